#include "fadesplit/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "fadesplit/bounds.hpp"
#include "fadesplit/csv.hpp"
#include "fadesplit/fbl.hpp"
#include "fadesplit/ora.hpp"
#include "fadesplit/oracle.hpp"
#include "fadesplit/pds.hpp"
#include "fadesplit/presets.hpp"
#include "fadesplit/quadrature.hpp"
#include "fadesplit/types.hpp"
#include "fadesplit/validate.hpp"

namespace fadesplit {

namespace {

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = std::stod(item, &pos);
    if (pos != item.size())
      throw std::invalid_argument("bad number '" + item + "' in list");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty value list");
  return out;
}

std::string join_numbers(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + format_number(v[i]);
  return s;
}

// Flat key=value config file, synthesized into --key=value tokens that
// are injected *before* the command-line flags so the latter win.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string body = line.substr(first, last - first + 1);
    auto eq = body.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("config line is not key=value: '" + body + "'");
    tokens.push_back("--" + body);
  }
  return tokens;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> merged{args[0]};
  for (auto& t : config_tokens(path)) merged.push_back(t);
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

void parallel_for(long count, int threads,
                  const std::function<void(long)>& fn) {
  long workers = std::min<long>(threads < 1 ? 1 : threads, count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::mutex mtx;
  std::exception_ptr error;
  auto work = [&] {
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mtx);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (long t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Everything a sweep command needs to know about its channel family.
struct SweepSetup {
  double R;
  double P;
  std::vector<double> d;
  std::string preset_name;      // empty when --d was given
  bool theta_param;             // theta sweep (P=1) vs fixed (P, sigma2)
  double sigma2 = 0.0;          // fixed parameterization only
  std::vector<double> thetas;   // ascending
};

std::vector<double> grid_points(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo > 0.0) || !(hi >= lo))
    throw std::invalid_argument("bad sweep grid: need 0 < min <= max, step > 0");
  std::vector<double> pts;
  for (long k = 0;; ++k) {
    double v = lo + static_cast<double>(k) * step;
    if (v > hi + 1e-9 * step) break;
    pts.push_back(v);
  }
  return pts;
}

// Per-subcommand option bundle; resolved into a SweepSetup after parse.
struct CommonOpts {
  double R = 0.1;
  double P = 1.0;
  double sigma2 = 0.0;
  std::string d_list;
  std::string preset_name;
  double theta_min = 0.0, theta_max = 0.0, theta_step = 0.0;
  long n = 0;
  std::string quad = "gl:200";
  std::string out_path;
  int threads = std::max(1u, std::thread::hardware_concurrency());
  std::string config_path;

  CLI::Option* opt_R = nullptr;
  CLI::Option* opt_P = nullptr;
  CLI::Option* opt_sigma2 = nullptr;
  CLI::Option* opt_theta_min = nullptr;

  void add_channel_flags(CLI::App* sub, bool with_theta_sweep) {
    opt_R = sub->add_option("--R", R, "per-block rate (bits/channel use)");
    opt_P = sub->add_option("--P", P, "power budget");
    sub->add_option("--d", d_list, "importance weights, comma list summing to 1");
    sub->add_option("--preset", preset_name, "named parameter bundle")
        ->check(CLI::IsMember({"fig2", "fig3", "fig9"}));
    if (with_theta_sweep) {
      opt_sigma2 = sub->add_option("--sigma2", sigma2, "mean channel gain (fixed-channel mode)");
      opt_theta_min = sub->add_option("--theta-min", theta_min, "sweep start");
      sub->add_option("--theta-max", theta_max, "sweep end (inclusive)");
      sub->add_option("--theta-step", theta_step, "sweep step");
    }
  }
  void add_io_flags(CLI::App* sub) {
    sub->add_option("--out", out_path, "write CSV here instead of stdout");
    sub->add_option("--threads", threads, "worker pool size");
    sub->add_option("--config", config_path, "flat key=value config file (flags win)");
  }

  SweepSetup resolve() const {
    SweepSetup s;
    s.R = R;
    s.P = P;
    std::vector<double> d_raw;
    if (!preset_name.empty()) {
      if (!d_list.empty())
        throw std::invalid_argument("--preset and --d are mutually exclusive");
      Preset p = preset(preset_name);
      s.R = opt_R->count() ? R : p.R;
      s.P = opt_P->count() ? P : p.P;
      d_raw = p.d;
      s.preset_name = preset_name;
    } else if (!d_list.empty()) {
      d_raw = parse_double_list(d_list);
    } else {
      throw std::invalid_argument("provide --preset or --d");
    }
    s.d = validate_importance(d_raw);

    bool theta_given = opt_theta_min && opt_theta_min->count();
    bool sigma2_given = opt_sigma2 && opt_sigma2->count();
    if (theta_given == sigma2_given)
      throw std::invalid_argument(
          "provide exactly one of --sigma2 (fixed channel) or "
          "--theta-min/--theta-max/--theta-step (sweep)");
    if (theta_given) {
      if (opt_P->count())
        throw std::invalid_argument("the theta sweep fixes P=1; drop --P");
      s.theta_param = true;
      s.P = 1.0;
      s.thetas = grid_points(theta_min, theta_max, theta_step);
    } else {
      s.theta_param = false;
      if (!(sigma2 > 0.0) || !(s.P > 0.0))
        throw std::invalid_argument("--sigma2 and --P must be positive");
      s.sigma2 = sigma2;
      s.thetas = {Channel::from_power(s.R, s.P, sigma2).theta};
    }
    return s;
  }
};

int with_output(const std::string& path, std::ostream& fallback,
                std::ostream& err,
                const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return kExitOk;
  }
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot open output file '" << path << "'\n";
    return kExitUsage;
  }
  body(f);
  return kExitOk;
}

void channel_metadata(CsvWriter& csv, const SweepSetup& s) {
  if (!s.preset_name.empty()) csv.metadata("preset", s.preset_name);
  csv.metadata("R", s.R);
  csv.metadata("d", join_numbers(s.d));
  if (s.theta_param) {
    csv.metadata("parameterization", "theta");
    csv.metadata("P", 1.0);
  } else {
    csv.metadata("parameterization", "power");
    csv.metadata("P", s.P);
    csv.metadata("sigma2", s.sigma2);
  }
}

// ---- error-bounds ----------------------------------------------------

struct ErrorBoundsOpts {
  long n = 10000;
  double rho = 3.0;
  double f_min = 0.01, f_max = 1.0;
  long f_points = 100;
  CommonOpts common;
};

int cmd_error_bounds(const ErrorBoundsOpts& o, std::ostream& out,
                     std::ostream& err) {
  if (o.n <= 0 || o.f_points <= 0 || !(o.rho > 0.0) || !(o.f_min > 0.0) ||
      !(o.f_max >= o.f_min) || o.f_max > 1.0)
    throw std::invalid_argument("need n > 0, rho > 0, 0 < f-min <= f-max <= 1");
  double C = capacity(o.rho);
  std::vector<std::vector<double>> rows(o.f_points);
  parallel_for(o.f_points, o.common.threads, [&](long i) {
    double f = o.f_points == 1
                   ? o.f_min
                   : o.f_min + (o.f_max - o.f_min) * static_cast<double>(i) /
                                   static_cast<double>(o.f_points - 1);
    double R = f * C;
    double n = static_cast<double>(o.n);
    rows[i] = {f, R, err_exp(n, R, o.rho), err_nor(n, R, o.rho),
               err_bound(n, R, o.rho)};
  });
  return with_output(o.common.out_path, out, err, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.metadata("command", "error-bounds");
    csv.metadata("n", static_cast<double>(o.n));
    csv.metadata("rho", o.rho);
    csv.metadata("capacity", C);
    csv.header({"f", "R", "err_exp", "err_nor", "err_bound"});
    for (auto& r : rows) csv.row(r);
  });
}

// ---- asym ------------------------------------------------------------

struct AsymOpts {
  std::string scheme = "both";
  CommonOpts common;
};

int cmd_asym(const AsymOpts& o, std::ostream& out, std::ostream& err) {
  SweepSetup s = o.common.resolve();
  if (s.d.size() < 2)
    throw std::invalid_argument("asym needs at least 2 blocks");
  std::size_t K = s.d.size();
  bool pds_on = o.scheme != "ora", ora_on = o.scheme != "pds";
  std::vector<std::vector<double>> rows(s.thetas.size());
  parallel_for(static_cast<long>(s.thetas.size()), o.common.threads, [&](long i) {
    double theta = s.thetas[i];
    std::vector<double> row{theta};
    double n2 = 0.0, n4 = 0.0;
    if (pds_on) {
      auto sol = pds::solve_local(theta, s.R, s.d);
      n2 = sol.value;
      row.push_back(n2);
      for (double a : pds::alpha_from_x(sol.split, s.R)) row.push_back(a);
    }
    if (ora_on) {
      auto sol = ora::solve_local(theta, s.R, s.d);
      n4 = sol.value;
      row.push_back(n4);
      for (double v : sol.split) row.push_back(v);
    }
    if (pds_on && ora_on) row.push_back(100.0 * n4 / n2);
    rows[i] = std::move(row);
  });
  return with_output(o.common.out_path, out, err, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.metadata("command", "asym");
    csv.metadata("scheme", o.scheme);
    channel_metadata(csv, s);
    std::vector<std::string> cols{"theta"};
    if (pds_on) {
      cols.push_back("pds_asym");
      for (std::size_t j = 1; j <= K; ++j)
        cols.push_back("alpha_" + std::to_string(j));
    }
    if (ora_on) {
      cols.push_back("ora_asym");
      for (std::size_t j = 1; j <= K; ++j)
        cols.push_back("v_" + std::to_string(j));
    }
    if (pds_on && ora_on) cols.push_back("ratio_pct");
    csv.header(cols);
    for (auto& r : rows) csv.row(r);
  });
}

// ---- fbl -------------------------------------------------------------

struct FblOpts {
  std::string scheme = "both";
  CommonOpts common;
};

int cmd_fbl(const FblOpts& o, std::ostream& out, std::ostream& err) {
  SweepSetup s = o.common.resolve();
  if (s.d.size() < 2) throw std::invalid_argument("fbl needs at least 2 blocks");
  if (o.common.n <= 0) throw std::invalid_argument("fbl needs --n > 0");
  QuadSpec quad = QuadSpec::parse(o.common.quad);
  bool pds_on = o.scheme != "ora", ora_on = o.scheme != "pds";
  std::vector<std::vector<double>> rows(s.thetas.size());
  parallel_for(static_cast<long>(s.thetas.size()), o.common.threads, [&](long i) {
    double theta = s.thetas[i];
    Channel ch = s.theta_param ? Channel::from_theta(s.R, theta)
                               : Channel::from_power(s.R, s.P, s.sigma2);
    std::vector<double> row{theta};
    double n2 = 0, n4 = 0, n5 = 0, n6 = 0;
    if (pds_on) {
      n5 = fbl::best_pds(ch, s.d, o.common.n, quad).value;
      row.push_back(n5);
    }
    if (ora_on) {
      n6 = fbl::best_ora(ch, s.d, o.common.n, quad).value;
      row.push_back(n6);
    }
    if (pds_on) {
      n2 = pds::solve_local(theta, s.R, s.d).value;
      row.push_back(n2);
    }
    if (ora_on) {
      n4 = ora::solve_local(theta, s.R, s.d).value;
      row.push_back(n4);
    }
    if (pds_on) row.push_back(100.0 * n5 / n2);
    if (ora_on) row.push_back(100.0 * n6 / n4);
    if (pds_on && ora_on) row.push_back(100.0 * n6 / n5);
    rows[i] = std::move(row);
  });
  return with_output(o.common.out_path, out, err, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.metadata("command", "fbl");
    csv.metadata("scheme", o.scheme);
    channel_metadata(csv, s);
    csv.metadata("n", static_cast<double>(o.common.n));
    csv.metadata("quad", quad.to_string());
    std::vector<std::string> cols{"theta"};
    if (pds_on) cols.push_back("pds_fbl");
    if (ora_on) cols.push_back("ora_fbl");
    if (pds_on) cols.push_back("pds_asym");
    if (ora_on) cols.push_back("ora_asym");
    if (pds_on) cols.push_back("pct_fbl_vs_asym_pds");
    if (ora_on) cols.push_back("pct_fbl_vs_asym_ora");
    if (pds_on && ora_on) cols.push_back("pct_ora_vs_pds_fbl");
    csv.header(cols);
    for (auto& r : rows) csv.row(r);
  });
}

// ---- partition -------------------------------------------------------

struct PartitionOpts {
  double sigma2_min = 0.0, sigma2_max = 0.0, sigma2_step = 0.0;
  CommonOpts common;
};

int cmd_partition(const PartitionOpts& o, std::ostream& out,
                  std::ostream& err) {
  std::vector<double> d_raw;
  double R = o.common.R, P = o.common.P;
  std::string preset_name = o.common.preset_name.empty() && o.common.d_list.empty()
                                ? "fig9"
                                : o.common.preset_name;
  if (!preset_name.empty()) {
    if (!o.common.d_list.empty())
      throw std::invalid_argument("--preset and --d are mutually exclusive");
    Preset p = preset(preset_name);
    R = o.common.opt_R->count() ? o.common.R : p.R;
    P = o.common.opt_P->count() ? o.common.P : p.P;
    d_raw = p.d;
  } else {
    d_raw = parse_double_list(o.common.d_list);
  }
  std::vector<double> d = validate_importance(d_raw);
  std::size_t K = d.size();
  if ((K & (K - 1)) != 0)
    throw std::invalid_argument("partition needs a power-of-two block count");
  if (!(P > 0.0)) throw std::invalid_argument("--P must be positive");

  // Aggregation ladder: halve the block count, double the rate.
  struct Level {
    std::size_t K;
    double R;
    std::vector<double> d;
  };
  std::vector<Level> levels;
  for (Level cur{K, R, d};; cur = {cur.K / 2, cur.R * 2.0,
                                   aggregate_pairs(cur.d)}) {
    levels.push_back(cur);
    if (cur.K == 1) break;
  }

  std::vector<double> sigmas =
      grid_points(o.sigma2_min, o.sigma2_max, o.sigma2_step);
  long n = o.common.n;
  QuadSpec quad = QuadSpec::parse(o.common.quad);
  std::vector<std::vector<double>> rows(sigmas.size());
  parallel_for(static_cast<long>(sigmas.size()), o.common.threads, [&](long i) {
    double sigma2 = sigmas[i];
    std::vector<double> row{sigma2};
    for (const Level& lv : levels) {
      double theta = Channel::from_power(lv.R, P, sigma2).theta;
      row.push_back(lv.K == 1 ? std::exp(-theta)
                              : ora::solve_local(theta, lv.R, lv.d).value);
    }
    if (n > 0) {
      for (const Level& lv : levels) {
        Channel ch = Channel::from_power(lv.R, P, sigma2);
        row.push_back(fbl::best_ora(ch, lv.d, n, quad).value);
      }
    }
    rows[i] = std::move(row);
  });
  return with_output(o.common.out_path, out, err, [&](std::ostream& os) {
    CsvWriter csv(os);
    csv.metadata("command", "partition");
    if (!preset_name.empty()) csv.metadata("preset", preset_name);
    csv.metadata("base_R", R);
    csv.metadata("P", P);
    csv.metadata("d", join_numbers(d));
    if (n > 0) {
      csv.metadata("n", static_cast<double>(n));
      csv.metadata("quad", quad.to_string());
    }
    std::vector<std::string> cols{"sigma2"};
    for (const Level& lv : levels)
      cols.push_back("ora_asym_K" + std::to_string(lv.K));
    if (n > 0)
      for (const Level& lv : levels)
        cols.push_back("ora_fbl_K" + std::to_string(lv.K));
    csv.header(cols);
    for (auto& r : rows) csv.row(r);
  });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Optimal power/time splits for weighted unequal error "
               "protection over quasi-static fading"};
  app.name("fadesplit");
  app.require_subcommand(0, 1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  ErrorBoundsOpts eb;
  auto* sub_eb = app.add_subcommand(
      "error-bounds", "Block error bounds across a rate-fraction sweep");
  sub_eb->add_option("--n", eb.n, "blocklength");
  sub_eb->add_option("--rho", eb.rho, "SNR");
  sub_eb->add_option("--f-min", eb.f_min, "lowest rate fraction");
  sub_eb->add_option("--f-max", eb.f_max, "highest rate fraction");
  sub_eb->add_option("--f-points", eb.f_points, "grid size");
  eb.common.add_io_flags(sub_eb);

  AsymOpts as;
  auto* sub_as = app.add_subcommand(
      "asym", "Asymptotically optimal splits across a theta sweep");
  as.common.add_channel_flags(sub_as, true);
  sub_as->add_option("--scheme", as.scheme, "pds, ora or both")
      ->check(CLI::IsMember({"pds", "ora", "both"}));
  as.common.add_io_flags(sub_as);

  FblOpts fb;
  auto* sub_fb = app.add_subcommand(
      "fbl", "Finite-blocklength best splits across a theta sweep");
  fb.common.add_channel_flags(sub_fb, true);
  sub_fb->add_option("--n", fb.common.n, "blocklength");
  sub_fb->add_option("--quad", fb.common.quad,
                     "expectation rule: gl:ORDER or mc:SAMPLES:SEED");
  sub_fb->add_option("--scheme", fb.scheme, "pds, ora or both")
      ->check(CLI::IsMember({"pds", "ora", "both"}));
  fb.common.add_io_flags(sub_fb);

  PartitionOpts pt;
  auto* sub_pt = app.add_subcommand(
      "partition", "Pairwise-aggregation ladder across a sigma2 sweep");
  pt.common.add_channel_flags(sub_pt, false);
  sub_pt->add_option("--sigma2-min", pt.sigma2_min, "sweep start")->required();
  sub_pt->add_option("--sigma2-max", pt.sigma2_max, "sweep end (inclusive)")
      ->required();
  sub_pt->add_option("--sigma2-step", pt.sigma2_step, "sweep step")->required();
  sub_pt->add_option("--n", pt.common.n,
                     "optional blocklength for finite-n columns");
  sub_pt->add_option("--quad", pt.common.quad,
                     "expectation rule: gl:ORDER or mc:SAMPLES:SEED");
  pt.common.add_io_flags(sub_pt);

  ValidateConfig vc;
  auto* sub_va =
      app.add_subcommand("validate", "Self-check suites with independent oracles");
  sub_va->add_flag("--quick", vc.quick, "reduced grids, under a minute");
  sub_va->add_option("--lambda-tol", vc.lambda_tol,
                     "solver bisection tolerance (fault-injection knob)");
  std::string va_config;
  sub_va->add_option("--config", va_config, "flat key=value config file");

  try {
    std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (sub_eb->parsed()) return cmd_error_bounds(eb, out, err);
    if (sub_as->parsed()) return cmd_asym(as, out, err);
    if (sub_fb->parsed()) return cmd_fbl(fb, out, err);
    if (sub_pt->parsed()) return cmd_partition(pt, out, err);
    if (sub_va->parsed()) {
      auto results = run_validation(vc, out);
      for (const auto& r : results)
        if (!r.passed) {
          err << "validation failed in suite '" << r.name << "'\n";
          return kExitValidation;
        }
      return kExitOk;
    }
  } catch (const oracle::BudgetError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << app.help();
  return kExitUsage;
}

}  // namespace fadesplit
