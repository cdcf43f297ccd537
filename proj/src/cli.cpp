#include "wscan/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "wscan/render.hpp"
#include "wscan/saturation.hpp"
#include "wscan/verifier.hpp"
#include "wscan/witness.hpp"

namespace wscan {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitLimit = 2;
constexpr int kExitInput = 3;

Expected<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return Expected<std::string>::fail("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommonOpts {
  int max_steps = 0;
  int max_resolvents = 0;
  int depth_limit = 0;
  bool one_sided_only = false;
  std::string witness_params = "keep";
  bool json = false;
  int k = 0;
  bool no_verify = false;
};

void apply_file_options(const ProblemFile& p, SaturationConfig& cfg) {
  auto get_int = [&p](const char* key, int& target) {
    auto it = p.options.find(key);
    if (it != p.options.end()) target = std::atoi(it->second.c_str());
  };
  get_int("max_steps", cfg.max_steps);
  get_int("max_resolvents", cfg.max_purification_resolvents);
  get_int("depth_limit", cfg.depth_limit);
  auto it = p.options.find("one_sided_only");
  if (it != p.options.end()) cfg.one_sided_only = it->second == "true" || it->second == "1";
}

SaturationConfig build_config(const ProblemFile& p, const CommonOpts& o) {
  SaturationConfig cfg;
  apply_file_options(p, cfg);
  if (o.max_steps > 0) cfg.max_steps = o.max_steps;
  if (o.max_resolvents > 0) cfg.max_purification_resolvents = o.max_resolvents;
  if (o.depth_limit > 0) cfg.depth_limit = o.depth_limit;
  cfg.one_sided_only = cfg.one_sided_only || o.one_sided_only;
  if (const char* seed = std::getenv("WSCAN_SEED")) cfg.seed = std::strtoull(seed, nullptr, 10);
  return cfg;
}

int default_bound(const ProblemFile& p) {
  return p.signature.functions().empty() ? 3 : 2;
}

Expected<ProblemFile> load_problem(const std::string& path) {
  auto text = read_file(path);
  if (!text) return Expected<ProblemFile>::fail(text.error());
  return parse_problem(*text);
}

int run_scan_like(const std::string& path, const CommonOpts& o, bool with_witness,
                  std::ostream& out, std::ostream& err) {
  auto t0 = std::chrono::steady_clock::now();
  auto prob = load_problem(path);
  if (!prob) {
    err << "error: " << prob.error() << "\n";
    return kExitInput;
  }
  SaturationConfig cfg = build_config(*prob, o);
  RunResult res;
  res.problem = *prob;
  res.input_size_metric = input_size(prob->clauses);

  SaturateResult sat = saturate(prob->clauses, prob->signature, cfg);
  res.derivation = sat.derivation;
  res.detail = sat.detail;
  switch (sat.status) {
    case SaturateResult::Status::Eliminated: res.status = "eliminated"; break;
    case SaturateResult::Status::Limit: res.status = "limit"; break;
    case SaturateResult::Status::Stuck: res.status = "stuck"; break;
  }
  res.derivation_one_sided = sat.derivation.is_one_sided();

  int exit_code = kExitOk;
  if (sat.status != SaturateResult::Status::Eliminated) {
    exit_code = kExitLimit;
  } else if (with_witness) {
    Signature sig = prob->signature;
    TransformOptions topt;
    topt.depth_limit = cfg.depth_limit;
    auto trace = extract_witness(sat.derivation, sig, topt);
    if (!trace) {
      err << "error: " << trace.error() << "\n";
      return kExitInput;
    }
    Witness w = trace->final;
    if (o.witness_params == "top") w = simplify(instantiate_witness_params(w, true));
    if (o.witness_params == "bottom") w = simplify(instantiate_witness_params(w, false));
    res.witness = w;
    res.has_witness = true;
    res.witness_size_metric = size_of(w);

    if (!o.no_verify) {
      if (w.truncated()) {
        res.detail = "verification skipped: witness is truncated";
      } else {
        Witness checked = instantiate_witness_params(w, true);
        int k = o.k > 0 ? o.k : default_bound(*prob);
        auto rep = check_wsoqe(prob->clauses, prob->signature.predicate_variables(),
                               checked, k);
        if (!rep) {
          err << "error: " << rep.error() << "\n";
          return kExitInput;
        }
        res.wsoqe_report = *rep;
        if (!rep->verified) exit_code = kExitCounterexample;
      }
    }
  }
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (o.json) {
    out << res.to_json().dump(2) << "\n";
  } else {
    out << res.to_text();
  }
  return exit_code;
}

int run_enumerate(const std::string& path, const CommonOpts& o, int limit, std::ostream& out,
                  std::ostream& err) {
  auto prob = load_problem(path);
  if (!prob) {
    err << "error: " << prob.error() << "\n";
    return kExitInput;
  }
  SaturationConfig cfg = build_config(*prob, o);
  cfg.enumerate_limit = std::max(cfg.enumerate_limit, limit * 8);

  std::set<std::string> seen;
  Json arr = Json::array();
  int printed = 0;
  enumerate_derivations(prob->clauses, prob->signature, cfg, [&](const Derivation& d) {
    Signature sig = prob->signature;
    TransformOptions topt;
    topt.depth_limit = cfg.depth_limit;
    auto trace = extract_witness(d, sig, topt);
    if (!trace) return true;
    Witness w = trace->final;
    if (o.witness_params == "top") w = simplify(instantiate_witness_params(w, true));
    if (o.witness_params == "bottom") w = simplify(instantiate_witness_params(w, false));
    std::string text = witness_to_text(w);
    if (seen.count(text)) return true;
    seen.insert(text);
    ++printed;
    if (o.json) {
      Json wj = witness_to_json(w, prob->signature.predicate_variables());
      wj["text"] = text;
      wj["steps"] = d.length();
      wj["one_sided"] = d.is_one_sided();
      arr.push_back(std::move(wj));
    } else {
      out << text << (w.truncated() ? "   [truncated]" : "")
          << (d.is_one_sided() ? "" : "   [not one-sided]") << "\n";
    }
    return printed < limit;
  });
  if (o.json) out << arr.dump(2) << "\n";
  if (printed == 0) {
    err << "no witness found within the limits\n";
    return kExitLimit;
  }
  return kExitOk;
}

int run_verify(const std::string& path, const std::string& witness_path, const CommonOpts& o,
               std::ostream& out, std::ostream& err) {
  auto prob = load_problem(path);
  if (!prob) {
    err << "error: " << prob.error() << "\n";
    return kExitInput;
  }
  auto wtext = read_file(witness_path);
  if (!wtext) {
    err << "error: " << wtext.error() << "\n";
    return kExitInput;
  }
  Json j;
  try {
    j = Json::parse(*wtext);
  } catch (const std::exception& e) {
    err << "error: witness file: " << e.what() << "\n";
    return kExitInput;
  }
  auto w = witness_from_json(j);
  if (!w) {
    err << "error: " << w.error() << "\n";
    return kExitInput;
  }
  Witness checked = *w;
  if (o.witness_params == "top" || o.witness_params == "keep")
    checked = instantiate_witness_params(checked, true);
  if (o.witness_params == "bottom") checked = instantiate_witness_params(checked, false);
  int k = o.k > 0 ? o.k : default_bound(*prob);
  auto rep = check_wsoqe(prob->clauses, prob->signature.predicate_variables(), checked, k);
  if (!rep) {
    err << "error: " << rep.error() << "\n";
    return kExitInput;
  }
  if (o.json) {
    out << report_to_json(*rep).dump(2) << "\n";
  } else if (rep->verified) {
    out << "verified-up-to(" << rep->up_to << "), " << rep->structures_checked
        << " structures checked\n";
  } else {
    out << "counterexample at domain size " << rep->up_to << ": "
        << rep->counterexample->to_string() << "\n  " << rep->detail << "\n";
  }
  return rep->verified ? kExitOk : kExitCounterexample;
}

int run_bench(const std::string& family, bool json, std::ostream& out, std::ostream& err) {
  int p = 0, n = 0;
  if (std::sscanf(family.c_str(), "%d,%d", &p, &n) != 2 || p < 1 || n < 1) {
    err << "error: --family expects p,n with p,n >= 1\n";
    return kExitInput;
  }
  Json rows = Json::array();
  if (!json)
    out << "  p   n   witness_size   closed_form\n";
  for (int pi = 1; pi <= p; ++pi) {
    for (int ni = 1; ni <= n; ++ni) {
      Signature sig;
      auto fam = generate_size_family(pi, ni, sig);
      if (!fam) {
        err << "error: " << fam.error() << "\n";
        return kExitInput;
      }
      TransformOptions topt;
      topt.apply_simplification = false;
      auto trace = extract_witness(fam->second, sig, topt);
      if (!trace) {
        err << "error: " << trace.error() << "\n";
        return kExitInput;
      }
      Size sz = size_of(trace->final);
      // w0 = 2n^p + (n+2) * sum_{j=0}^{p-1} n^(p-j-1)
      std::uint64_t closed = 2 * ipow(ni, pi);
      for (int j = 0; j < pi; ++j) closed += static_cast<std::uint64_t>(ni + 2) * ipow(ni, pi - j - 1);
      if (json) {
        rows.push_back(Json{{"p", pi},
                            {"n", ni},
                            {"witness_size", sz ? Json(*sz) : Json("infinite")},
                            {"closed_form", closed}});
      } else {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%3d %3d   %12llu   %11llu%s\n", pi, ni,
                      static_cast<unsigned long long>(sz ? *sz : 0),
                      static_cast<unsigned long long>(closed),
                      (sz && *sz == closed) ? "" : "   MISMATCH");
        out << buf;
      }
    }
  }
  if (json) out << rows.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"WSCAN: second-order quantifier elimination with witness extraction"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string file, witness_file, family = "4,3";
  int limit = 8;

  auto add_common = [&o](CLI::App* cmd, bool with_k) {
    cmd->add_option("--max-steps", o.max_steps, "derivation step limit");
    cmd->add_option("--max-resolvents", o.max_resolvents, "purification resolvent limit");
    cmd->add_option("--depth-limit", o.depth_limit, "unit-closure round limit");
    cmd->add_flag("--one-sided-only", o.one_sided_only, "purify only one-sided pointed clauses");
    cmd->add_option("--witness-params", o.witness_params,
                    "witness parameter handling: top, bottom or keep")
        ->check(CLI::IsMember({"top", "bottom", "keep"}));
    cmd->add_flag("--json", o.json, "machine-readable output");
    if (with_k) cmd->add_option("-k", o.k, "verification domain bound");
  };

  CLI::App* scan = app.add_subcommand("scan", "eliminate the predicate variables");
  scan->add_option("file", file, "problem file")->required();
  add_common(scan, false);

  CLI::App* wscan = app.add_subcommand("wscan", "eliminate and extract a witness");
  wscan->add_option("file", file, "problem file")->required();
  add_common(wscan, true);
  wscan->add_flag("--no-verify", o.no_verify, "skip the WSOQE check");

  CLI::App* enumerate = app.add_subcommand("enumerate", "stream distinct witnesses");
  enumerate->add_option("file", file, "problem file")->required();
  enumerate->add_option("--limit", limit, "maximum number of witnesses");
  add_common(enumerate, false);

  CLI::App* verify = app.add_subcommand("verify", "check a witness against a problem");
  verify->add_option("file", file, "problem file")->required();
  verify->add_option("--witness", witness_file, "witness JSON file")->required();
  add_common(verify, true);

  CLI::App* bench = app.add_subcommand("bench", "witness-size family table");
  bench->add_option("--family", family, "p,n upper bounds");
  bench->add_flag("--json", o.json, "machine-readable output");

  std::vector<std::string> argv = args;
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (scan->parsed()) return run_scan_like(file, o, false, out, err);
  if (wscan->parsed()) return run_scan_like(file, o, true, out, err);
  if (enumerate->parsed()) return run_enumerate(file, o, limit, out, err);
  if (verify->parsed()) return run_verify(file, witness_file, o, out, err);
  if (bench->parsed()) return run_bench(family, o.json, out, err);
  err << "error: no subcommand\n";
  return kExitInput;
}

}  // namespace wscan
