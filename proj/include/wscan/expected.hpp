#ifndef WSCAN_EXPECTED_HPP
#define WSCAN_EXPECTED_HPP

#include <optional>
#include <string>
#include <utility>

namespace wscan {

// Minimal value-or-error result. Errors are expected outcomes (illegal step,
// parse failure), not exceptions.
template <typename T>
class Expected {
 public:
  Expected(T value) : value_(std::move(value)) {}

  static Expected fail(std::string message) {
    Expected e;
    e.error_ = std::move(message);
    return e;
  }

  explicit operator bool() const { return value_.has_value(); }
  bool ok() const { return value_.has_value(); }

  T& operator*() { return *value_; }
  const T& operator*() const { return *value_; }
  T* operator->() { return &*value_; }
  const T* operator->() const { return &*value_; }

  const std::string& error() const { return error_; }

 private:
  Expected() = default;
  std::optional<T> value_;
  std::string error_;
};

struct Ok {};

template <>
class Expected<void> {
 public:
  Expected(Ok) : ok_(true) {}

  static Expected fail(std::string message) {
    Expected e;
    e.error_ = std::move(message);
    return e;
  }

  explicit operator bool() const { return ok_; }
  bool ok() const { return ok_; }
  const std::string& error() const { return error_; }

 private:
  Expected() = default;
  bool ok_ = false;
  std::string error_;
};

}  // namespace wscan

#endif
