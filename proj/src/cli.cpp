#include "bargain/cli.h"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bargain/config.h"
#include "bargain/mc_oracle.h"
#include "bargain/optimizer.h"
#include "bargain/outcomes.h"
#include "bargain/payoff.h"
#include "bargain/stage2.h"
#include "bargain/sweep.h"

namespace bargain {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;

std::string fixed6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string extended(const ExtendedReal& r, std::string (*fmt)(double)) {
  switch (r.kind()) {
    case ExtendedReal::Kind::NegInf: return "-inf";
    case ExtendedReal::Kind::PosInf: return "inf";
    case ExtendedReal::Kind::Finite: return fmt(r.value());
  }
  return "nan";
}

// Parameter flags shared by every subcommand that takes a game.
struct ParamFlags {
  std::string config;
  std::optional<double> y_g, y_r, x, alpha, a_lo, a_hi, a_half;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "key=value parameter file");
    app->add_option("--alpha", alpha, "surviving share after war, in (0,1)");
    app->add_option("--x", x, "arms gap y_g - y_r");
    app->add_option("--y_g", y_g, "government arms (log scale)");
    app->add_option("--y_r", y_r, "rebel arms before the shock (log scale)");
    app->add_option("--a_half", a_half, "half-width of a symmetric shock support");
    app->add_option("--a_lo", a_lo, "lower end of the shock support");
    app->add_option("--a_hi", a_hi, "upper end of the shock support");
  }

  ParamSource resolve() const {
    ParamSource file;
    if (!config.empty()) file = parse_config_file(config);
    ParamSource flags;
    const std::pair<const char*, const std::optional<double>*> all[] = {
        {"y_g", &y_g}, {"y_r", &y_r},   {"x", &x},         {"alpha", &alpha},
        {"a_lo", &a_lo}, {"a_hi", &a_hi}, {"a_half", &a_half}};
    for (const auto& [key, v] : all) {
      if (*v) flags.set(key, **v);
    }
    return ParamSource::overlay(file, flags);
  }
};

void print_thresholds(const GameParams& p, std::optional<double> beta, bool csv, std::ostream& out) {
  const ThresholdSet s = threshold_set(p);
  const PeaceInterval pi = peace_interval(p);
  std::vector<std::pair<std::string, std::string>> kv;
  auto fmt = csv ? &sig12 : &fixed6;
  kv.emplace_back("beta_g_minus", fmt(s.beta_g_minus));
  kv.emplace_back("beta_g_plus", fmt(s.beta_g_plus));
  kv.emplace_back("beta_r_minus", fmt(s.beta_r_minus));
  kv.emplace_back("beta_r_plus", fmt(s.beta_r_plus));
  kv.emplace_back("peace_interval", pi.exists ? "yes" : "no");
  if (beta) {
    const FightThresholds t = fight_thresholds(p, *beta);
    kv.emplace_back("beta", fmt(*beta));
    kv.emplace_back("t_g", extended(t.t_g, fmt));
    kv.emplace_back("t_r", extended(t.t_r, fmt));
    kv.emplace_back("branch", std::string(branch_name(classify(s, pi.exists, *beta))));
  }
  if (csv) {
    for (std::size_t i = 0; i < kv.size(); ++i) out << (i ? "," : "") << kv[i].first;
    out << '\n';
    for (std::size_t i = 0; i < kv.size(); ++i) out << (i ? "," : "") << kv[i].second;
    out << '\n';
  } else {
    for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
  }
}

void print_payoff_point(const GameParams& p, double beta, std::ostream& out) {
  const PayoffBreakdown g = gov_expected(p, beta);
  const PayoffBreakdown r = reb_expected(p, beta);
  const double pw = war_probability(p, beta);
  out << "beta=" << fixed6(beta) << '\n'
      << "branch=" << branch_name(g.branch) << '\n'
      << "gov_total=" << fixed6(g.total) << '\n'
      << "gov_war=" << fixed6(g.war_component) << '\n'
      << "gov_peace=" << fixed6(g.peace_component) << '\n'
      << "reb_total=" << fixed6(r.total) << '\n'
      << "reb_war=" << fixed6(r.war_component) << '\n'
      << "reb_peace=" << fixed6(r.peace_component) << '\n'
      << "prob_war=" << fixed6(pw) << '\n'
      << "welfare=" << fixed6(1.0 - pw * (1.0 - p.alpha())) << '\n';
}

void print_payoff_grid(const GameParams& p, int count, std::ostream& out) {
  if (count < 2) throw Error(ErrorCode::InvalidConfig, "--count must be at least 2");
  out << "beta,branch,gov_total,reb_total,prob_war,welfare\n";
  for (int i = 0; i < count; ++i) {
    const double beta = static_cast<double>(i) / (count - 1);
    const PayoffBreakdown g = gov_expected(p, beta);
    const double pw = war_probability(p, beta);
    out << sig12(beta) << ',' << branch_name(g.branch) << ',' << sig12(g.total) << ','
        << sig12(reb_expected(p, beta).total) << ',' << sig12(pw) << ','
        << sig12(1.0 - pw * (1.0 - p.alpha())) << '\n';
  }
}

void print_solution(const SymmetricParams& sp, bool oracle, std::ostream& out) {
  const Solution sol = solve(sp);
  const OutcomeReport rep = outcome_report(sp, sol);
  out << "beta_star=" << fixed6(sol.beta_star) << '\n'
      << "regime=" << regime_name(sol.regime) << '\n'
      << "prob_war=" << fixed6(rep.prob_war) << '\n'
      << "welfare=" << fixed6(rep.welfare) << '\n'
      << "gov_payoff=" << fixed6(rep.gov_payoff) << '\n'
      << "reb_payoff=" << fixed6(rep.reb_payoff) << '\n'
      << "beta_r_minus=" << fixed6(sol.beta_r_minus) << '\n'
      << "beta_g_plus=" << fixed6(sol.beta_g_plus) << '\n'
      << "beta_r_plus=" << fixed6(sol.beta_r_plus) << '\n'
      << "is_unique=" << (sol.is_unique ? "yes" : "no") << '\n'
      << "near_tie_gap=" << (std::isinf(sol.near_tie_gap) ? "inf" : sig12(sol.near_tie_gap)) << '\n'
      << "candidates=" << sol.candidates.size() << '\n';
  for (std::size_t i = 0; i < sol.candidates.size(); ++i) {
    out << "candidate_" << i + 1 << "=beta:" << fixed6(sol.candidates[i].beta)
        << " payoff:" << fixed6(sol.candidates[i].payoff) << '\n';
  }
  if (!oracle) return;
  // Brute-force check over the transfers the government could sensibly offer.
  const GameParams& p = sp.base();
  const ThresholdSet s = threshold_set(p);
  constexpr int kGrid = 100000;
  const double lo = s.beta_g_minus;
  const double step = (s.beta_r_plus - lo) / kGrid;
  double best_beta = lo;
  double best = -INFINITY;
  for (int i = 0; i <= kGrid; ++i) {
    const double b = lo + step * i;
    const double u = gov_expected(p, b).total;
    if (u > best) {
      best = u;
      best_beta = b;
    }
  }
  out << "oracle_beta=" << fixed6(best_beta) << '\n'
      << "oracle_payoff=" << fixed6(best) << '\n'
      << "oracle_step=" << sig12(step) << '\n'
      << "oracle_discrepancy=" << sig12(std::abs(best_beta - sol.beta_star)) << '\n'
      << "oracle_payoff_gap=" << sig12(rep.gov_payoff - best) << '\n';
}

int run_verify(std::uint64_t draws, std::uint64_t seed, std::size_t count, std::ostream& out) {
  const std::vector<BatteryCase> cases = verify_battery(count, seed);
  std::size_t flags = 0;
  double max_z = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const ValidationReport rep = validate_analytics(cases[i].params, cases[i].beta, draws,
                                                    splitmix64_mix(seed ^ (i + 1)));
    for (const Comparison& c : rep.rows) {
      if (std::isfinite(c.z)) max_z = std::max(max_z, std::abs(c.z));
      if (!c.flagged) continue;
      ++flags;
      const GameParams& p = cases[i].params;
      out << "flag case=" << i << " quantity=" << c.quantity << " alpha=" << sig12(p.alpha())
          << " x=" << sig12(p.x()) << " a_lo=" << sig12(p.a_lo()) << " a_hi=" << sig12(p.a_hi())
          << " beta=" << sig12(cases[i].beta) << " analytic=" << sig12(c.analytic)
          << " simulated=" << sig12(c.simulated) << " z=" << sig12(c.z) << '\n';
    }
  }
  out << "cases=" << cases.size() << '\n'
      << "comparisons=" << 3 * cases.size() << '\n'
      << "flags=" << flags << '\n'
      << "max_abs_z=" << fixed6(max_z) << '\n'
      << "status=" << (flags ? "FAIL" : "PASS") << '\n';
  return flags ? kExitVerifyFailed : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solver for a two-stage bargaining game between a government and rebels",
               "bargain"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand and exit");

  int status = kExitOk;
  std::function<void()> action;

  ParamFlags thr_p;
  std::optional<double> thr_beta;
  bool thr_csv = false;
  auto* thr = app.add_subcommand("thresholds", "Transfer bounds and fight thresholds");
  thr_p.attach(thr);
  thr->add_option("--beta", thr_beta, "also report fight thresholds at this transfer");
  thr->add_flag("--csv", thr_csv, "print one CSV row instead of key=value lines");
  thr->callback([&] {
    action = [&] { print_thresholds(thr_p.resolve().game_params(), thr_beta, thr_csv, out); };
  });

  ParamFlags ac_p;
  auto* ac = app.add_subcommand("acrit", "Critical half-width of a symmetric support");
  ac_p.attach(ac);
  ac->callback([&] {
    action = [&] {
      const ParamSource src = ac_p.resolve();
      const double alpha = src.alpha();
      if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in (0,1)");
      }
      const CriticalWidth c = a_crit(alpha, src.x());
      out << "a_crit=" << (c.is_unbounded() ? std::string("UNBOUNDED") : fixed6(c.half_width()))
          << '\n';
    };
  });

  ParamFlags pay_p;
  std::optional<double> pay_beta;
  int pay_count = 21;
  auto* pay = app.add_subcommand("payoff", "Expected payoffs at one transfer or over a grid");
  pay_p.attach(pay);
  pay->add_option("--beta", pay_beta, "single transfer; omit for a CSV grid over [0,1]");
  pay->add_option("--count", pay_count, "grid points when --beta is absent")->capture_default_str();
  pay->callback([&] {
    action = [&] {
      const GameParams p = pay_p.resolve().game_params();
      if (pay_beta) print_payoff_point(p, *pay_beta, out);
      else print_payoff_grid(p, pay_count, out);
    };
  });

  ParamFlags sol_p;
  bool sol_oracle = false;
  auto* sol = app.add_subcommand("solve", "Optimal transfer and equilibrium outcomes");
  sol_p.attach(sol);
  sol->add_flag("--oracle", sol_oracle, "cross-check against a 100000-point grid search");
  sol->callback([&] {
    action = [&] { print_solution(sol_p.resolve().symmetric_params(), sol_oracle, out); };
  });

  ParamFlags sw_p;
  std::string sw_param = "a_half", sw_spacing = "linear", sw_out;
  std::optional<double> sw_lo, sw_hi;
  int sw_count = 400;
  bool sw_truncate = false;
  auto* sw = app.add_subcommand("sweep", "Comparative statics over one parameter");
  sw_p.attach(sw);
  sw->add_option("--param", sw_param, "swept parameter: a_half, alpha or x")->capture_default_str();
  sw->add_option("--lo", sw_lo, "grid start (default 1e-4 for a_half)");
  sw->add_option("--hi", sw_hi, "grid end (default a_crit for a_half)");
  sw->add_option("--count", sw_count, "grid points")->capture_default_str();
  sw->add_option("--spacing", sw_spacing, "linear or log")->capture_default_str();
  sw->add_option("--out", sw_out, "CSV file; annotations go to <out>.annotations.txt");
  sw->add_flag("--truncate-acrit", sw_truncate, "cap an a_half grid at a_crit");
  sw->callback([&] {
    action = [&] {
      const ParamSource src = sw_p.resolve();
      const auto param = parse_sweep_param(sw_param);
      const auto spacing = parse_spacing(sw_spacing);
      if (!param) throw Error(ErrorCode::InvalidSweep, "unknown --param " + sw_param);
      if (!spacing) throw Error(ErrorCode::InvalidSweep, "unknown --spacing " + sw_spacing);
      SweepBase base;
      base.y_r = src.get("y_r").value_or(0.0);
      base.y_g = base.y_r + src.x();
      if (*param != SweepParam::Alpha) base.alpha = src.alpha();
      if (*param != SweepParam::AHalf) {
        const auto h = src.get("a_half");
        if (!h) throw Error(ErrorCode::InvalidConfig, "missing parameter a_half");
        base.a_half = *h;
      }
      SweepSpec spec = *param == SweepParam::AHalf ? default_a_sweep(base) : SweepSpec{};
      spec.base = base;
      spec.param = *param;
      spec.auto_truncate_at_acrit = sw_truncate;
      spec.count = sw_count;
      spec.spacing = *spacing;
      if (sw_lo) spec.lo = *sw_lo;
      if (sw_hi) spec.hi = *sw_hi;
      if (*param != SweepParam::AHalf && (!sw_lo || !sw_hi)) {
        throw Error(ErrorCode::InvalidSweep, "--lo and --hi are required for this parameter");
      }
      const SweepResult res = run_sweep(spec);
      if (sw_out.empty()) {
        emit_csv(res, out);
        emit_annotations(res, err);
      } else {
        emit_csv(res, sw_out);
        emit_annotations(res, sw_out + ".annotations.txt");
        out << "rows=" << res.rows.size() << '\n' << "csv=" << sw_out << '\n';
        emit_annotations(res, out);
      }
    };
  });

  ParamFlags sim_p;
  double sim_beta = 0.0;
  std::uint64_t sim_draws = 1000000, sim_seed = 1;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo play of the game at one transfer");
  sim_p.attach(sim);
  sim->add_option("--beta", sim_beta, "transfer kept by the government")->required();
  sim->add_option("--draws", sim_draws, "number of simulated games")->capture_default_str();
  sim->add_option("--seed", sim_seed, "generator seed")->capture_default_str();
  sim->callback([&] {
    action = [&] {
      const SimEstimate e = simulate({sim_p.resolve().game_params(), sim_beta, sim_draws, sim_seed});
      out << "draws=" << e.draws << '\n'
          << "gov_mean=" << fixed6(e.gov_mean) << '\n'
          << "gov_se=" << fixed6(e.gov_se) << '\n'
          << "reb_mean=" << fixed6(e.reb_mean) << '\n'
          << "reb_se=" << fixed6(e.reb_se) << '\n'
          << "war_freq=" << fixed6(e.war_freq) << '\n'
          << "war_se=" << fixed6(e.war_se) << '\n';
    };
  });

  std::uint64_t ver_draws = 1000000, ver_seed = 42;
  std::size_t ver_count = 200;
  auto* ver = app.add_subcommand("verify", "Check analytic payoffs against simulation");
  ver->add_option("--draws", ver_draws, "draws per case")->capture_default_str();
  ver->add_option("--seed", ver_seed, "battery seed")->capture_default_str();
  ver->add_option("--count", ver_count, "number of random cases")->capture_default_str();
  ver->callback([&] {
    action = [&] { status = run_verify(ver_draws, ver_seed, ver_count, out); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: InvalidArguments: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return status;
}

}  // namespace bargain
