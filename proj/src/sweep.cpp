#include "bargain/sweep.h"

#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <thread>

#include "bargain/outcomes.h"

namespace bargain {

namespace {

constexpr double kSwitchTolerance = 1e-8;

SweepBase with_value(SweepBase b, SweepParam p, double v) {
  switch (p) {
    case SweepParam::AHalf: b.a_half = v; break;
    case SweepParam::Alpha: b.alpha = v; break;
    case SweepParam::X: b.y_g = b.y_r + v; break;
  }
  return b;
}

Validated<SymmetricParams> params_at(const SweepSpec& spec, double v) {
  const SweepBase b = with_value(spec.base, spec.param, v);
  return SymmetricParams::make(b.y_g, b.y_r, b.alpha, b.a_half);
}

SweepRow evaluate(const SweepSpec& spec, double v) {
  SweepRow row{};
  row.value = v;
  const auto params = params_at(spec, v);
  if (!params.ok()) {
    row.error = std::string(error_name(params.errors.front()));
    return row;
  }
  try {
    const Solution sol = solve(*params);
    const OutcomeReport rep = outcome_report(*params, sol);
    row.ok = true;
    row.beta_star = sol.beta_star;
    row.regime = sol.regime;
    row.beta_r_minus = sol.beta_r_minus;
    row.beta_g_plus = sol.beta_g_plus;
    row.prob_war = rep.prob_war;
    row.welfare = rep.welfare;
    row.gov_payoff = rep.gov_payoff;
    row.reb_payoff = rep.reb_payoff;
    row.is_unique = sol.is_unique;
  } catch (const Error& e) {
    row.error = std::string(error_name(e.code()));
  }
  return row;
}

bool risks_war(const SweepSpec& spec, double v) {
  return peace_tie_gap(params_at(spec, v)->base()) > 0.0;
}

// Bisection on the sign of the payoff tie inside a bracket whose ends sit in
// different regimes.
double refine_switch(const SweepSpec& spec, double lo, double hi, bool war_at_hi) {
  while (hi - lo > kSwitchTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (risks_war(spec, mid) == war_at_hi) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

bool low_regime(const SweepRow& r) { return r.ok && r.regime != Regime::HighUncertainty; }

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string_view sweep_param_name(SweepParam p) {
  switch (p) {
    case SweepParam::AHalf: return "a_half";
    case SweepParam::Alpha: return "alpha";
    case SweepParam::X: return "x";
  }
  return "unknown";
}

std::optional<SweepParam> parse_sweep_param(std::string_view s) {
  if (s == "a_half") return SweepParam::AHalf;
  if (s == "alpha") return SweepParam::Alpha;
  if (s == "x") return SweepParam::X;
  return std::nullopt;
}

std::optional<Spacing> parse_spacing(std::string_view s) {
  if (s == "linear") return Spacing::Linear;
  if (s == "log") return Spacing::Log;
  return std::nullopt;
}

SweepSpec default_a_sweep(const SweepBase& base) {
  SweepSpec spec;
  spec.base = base;
  spec.param = SweepParam::AHalf;
  spec.lo = 1e-4;
  spec.hi = a_crit(base.alpha, base.y_g - base.y_r).value_or(10.0);
  spec.count = 400;
  spec.spacing = Spacing::Linear;
  spec.auto_truncate_at_acrit = true;
  return spec;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  if (spec.count < 2) throw Error(ErrorCode::InvalidSweep, "count must be at least 2");
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi)) {
    throw Error(ErrorCode::InvalidSweep, "grid bounds must be finite");
  }
  double hi = spec.hi;
  if (spec.auto_truncate_at_acrit && spec.param == SweepParam::AHalf) {
    const CriticalWidth crit = a_crit(spec.base.alpha, spec.base.y_g - spec.base.y_r);
    if (!crit.is_unbounded()) hi = std::min(hi, crit.half_width());
  }
  if (!(spec.lo < hi)) throw Error(ErrorCode::InvalidSweep, "grid needs lo < hi");
  if (spec.spacing == Spacing::Log && !(spec.lo > 0.0)) {
    throw Error(ErrorCode::InvalidSweep, "log spacing needs lo > 0");
  }
  std::vector<double> g(static_cast<std::size_t>(spec.count));
  const double n = spec.count - 1;
  for (int i = 0; i < spec.count; ++i) {
    const double t = i / n;
    g[i] = spec.spacing == Spacing::Linear ? spec.lo + (hi - spec.lo) * t
                                           : spec.lo * std::pow(hi / spec.lo, t);
  }
  g.back() = hi;
  return g;
}

SweepResult run_sweep(const SweepSpec& spec) {
  const std::vector<double> grid = sweep_grid(spec);
  SweepResult result;
  result.param = spec.param;
  result.rows.resize(grid.size());

  unsigned workers = spec.threads ? spec.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(grid.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      result.rows[i] = evaluate(spec, grid[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  const auto& rows = result.rows;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!low_regime(rows[i - 1]) || !low_regime(rows[i])) continue;
    const bool was_peace = rows[i - 1].regime == Regime::GuaranteePeace;
    const bool is_peace = rows[i].regime == Regime::GuaranteePeace;
    if (was_peace && !is_peace && !result.switch_point) {
      result.switch_point = refine_switch(spec, rows[i - 1].value, rows[i].value, true);
    } else if (!was_peace && is_peace && result.switch_point && !result.return_point) {
      result.return_point = refine_switch(spec, rows[i - 1].value, rows[i].value, false);
    }
  }

  if (spec.param == SweepParam::AHalf) {
    result.jump_point = detect_jump(spec.base.alpha, spec.base.y_g - spec.base.y_r, grid);
  }
  return result;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
  out << sweep_param_name(result.param)
      << ",beta_star,regime,beta_r_minus,beta_g_plus,prob_war,welfare,gov_payoff,reb_payoff,"
         "is_unique,error\n";
  for (const SweepRow& r : result.rows) {
    out << format_number(r.value) << ',';
    if (r.ok) {
      out << format_number(r.beta_star) << ',' << regime_name(r.regime) << ','
          << format_number(r.beta_r_minus) << ',' << format_number(r.beta_g_plus) << ','
          << format_number(r.prob_war) << ',' << format_number(r.welfare) << ','
          << format_number(r.gov_payoff) << ',' << format_number(r.reb_payoff) << ','
          << (r.is_unique ? 1 : 0) << ",\n";
    } else {
      out << ",,,,,,,,," << r.error << '\n';
    }
  }
}

namespace {

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Io, path + ": " + std::strerror(errno));
  writer(f);
  f.flush();
  if (!f) throw Error(ErrorCode::Io, path + ": " + std::strerror(errno));
}

}  // namespace

void emit_csv(const SweepResult& result, const std::string& path) {
  write_file(path, [&](std::ostream& o) { emit_csv(result, o); });
}

void emit_annotations(const SweepResult& result, std::ostream& out) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("none");
  };
  out << "param=" << sweep_param_name(result.param) << '\n';
  out << "switch_point=" << opt(result.switch_point) << '\n';
  out << "return_point=" << opt(result.return_point) << '\n';
  if (result.jump_point) {
    const JumpPoint& j = *result.jump_point;
    out << "jump_point=" << format_number(j.a_jump) << '\n';
    out << "jump_beta_before=" << format_number(j.beta_before) << '\n';
    out << "jump_beta_after=" << format_number(j.beta_after) << '\n';
    out << "jump_tie_gap=" << format_number(j.tie_gap) << '\n';
  } else {
    out << "jump_point=none\n";
  }
}

void emit_annotations(const SweepResult& result, const std::string& path) {
  write_file(path, [&](std::ostream& o) { emit_annotations(result, o); });
}

}  // namespace bargain
