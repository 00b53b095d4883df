#include "bargain/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

namespace bargain {

namespace {

constexpr int kScanPoints = 2048;
constexpr double kRootTolerance = 1e-12;

void check_foc_domain(double alpha, double beta) {
  if (!(beta > 1.0 - alpha + kFocDomainGuard && beta < 1.0 - kFocDomainGuard)) {
    throw Error(ErrorCode::DomainViolation, "FOC residual needs 1-alpha < beta < 1");
  }
}

double log_odds_term(double alpha, double beta) {
  return std::log(alpha + beta - 1.0) - std::log1p(-beta);
}

double rational_term(double alpha, double beta) {
  return alpha * (1.0 - alpha) / ((1.0 - beta) * (1.0 - alpha - beta));
}

// Half the points log-spaced towards each end, the other half uniform.
std::vector<double> scan_grid(double lo, double hi) {
  std::vector<double> g;
  g.reserve(kScanPoints + 2);
  const int half_log = kScanPoints / 4;
  const double mid = 0.5 * (lo + hi);
  for (int k = 0; k < half_log; ++k) {
    const double frac = std::pow(10.0, -12.0 + 12.0 * k / (half_log - 1));
    g.push_back(lo + (mid - lo) * frac);
    g.push_back(hi - (hi - mid) * frac);
  }
  const int uniform = kScanPoints - 2 * half_log;
  for (int k = 0; k <= uniform; ++k) g.push_back(lo + (hi - lo) * k / uniform);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

void scan_piece(const GameParams& p, Branch branch, double lo, double hi, double fd_step,
                std::vector<StationaryPoint>& out) {
  if (!(hi > lo)) return;
  auto slope = [&](double b) { return branch_slope(p, branch, b); };
  const std::vector<double> grid = scan_grid(lo, hi);
  double prev_b = grid.front();
  double prev_s = slope(prev_b);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double b = grid[i];
    const double s = slope(b);
    double root = std::numeric_limits<double>::quiet_NaN();
    if (s == 0.0) {
      root = b;
    } else if (prev_s != 0.0 && std::signbit(prev_s) != std::signbit(s)) {
      std::uintmax_t iters = 200;
      auto tol = [](double a, double c) { return std::abs(c - a) < kRootTolerance; };
      const auto r = boost::math::tools::toms748_solve(slope, prev_b, b, prev_s, s, tol, iters);
      root = 0.5 * (r.first + r.second);
    }
    if (!std::isnan(root)) {
      const double bl = std::max(lo, root - fd_step);
      const double bh = std::min(hi, root + fd_step);
      const double curvature = (slope(bh) - slope(bl)) / (bh - bl);
      PointKind kind = PointKind::Flat;
      if (curvature < 0.0) kind = PointKind::Max;
      if (curvature > 0.0) kind = PointKind::Min;
      out.push_back({root, branch, kind});
    }
    prev_b = b;
    prev_s = s;
  }
}

Regime low_regime_of(double beta_star, double beta_r_minus) {
  return beta_star == beta_r_minus ? Regime::GuaranteePeace : Regime::RiskWar;
}

}  // namespace

FocResidual foc_residual(const SymmetricParams& params, double beta) {
  const double alpha = params.alpha();
  check_foc_domain(alpha, beta);
  const double v = params.half_width() + params.x() + rational_term(alpha, beta) -
                   log_odds_term(alpha, beta);
  return {v, beta};
}

FocResidual foc_residual_alt(const SymmetricParams& params, double beta) {
  const double alpha = params.alpha();
  check_foc_domain(alpha, beta);
  const double split = alpha * beta / ((1.0 - beta) * (1.0 - alpha - beta)) + alpha / (1.0 - beta);
  const double v = params.half_width() + params.x() + split - log_odds_term(alpha, beta);
  return {v, beta};
}

double branch_slope(const GameParams& p, Branch branch, double beta) {
  const double alpha = p.alpha();
  switch (branch) {
    case Branch::AlwaysWarLow:
    case Branch::AlwaysWarHigh: return 0.0;
    case Branch::GuaranteedPeace: return p.width();
    case Branch::GovMayFight: return p.a_hi() - fight_thresholds(p, beta).t_g.value();
    case Branch::RebMayFight:
      return rational_term(alpha, beta) + fight_thresholds(p, beta).t_r.value() - p.a_lo();
    case Branch::BothMayFight: {
      const FightThresholds t = fight_thresholds(p, beta);
      return rational_term(alpha, beta) + t.t_r.value() - t.t_g.value();
    }
  }
  return 0.0;
}

std::vector<StationaryPoint> stationary_points(const GameParams& params) {
  const ThresholdSet s = threshold_set(params);
  const double fd_step = 1e-5 * (s.beta_r_plus - s.beta_r_minus);
  std::vector<StationaryPoint> out;
  if (peace_interval(params).exists) {
    scan_piece(params, Branch::RebMayFight, s.beta_r_minus, s.beta_r_plus, fd_step, out);
  } else {
    scan_piece(params, Branch::BothMayFight, s.beta_r_minus, s.beta_g_plus, fd_step, out);
    scan_piece(params, Branch::RebMayFight, s.beta_g_plus, s.beta_r_plus, fd_step, out);
  }
  return out;
}

std::vector<StationaryPoint> stationary_points(const SymmetricParams& params) {
  return stationary_points(params.base());
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::GuaranteePeace: return "GuaranteePeace";
    case Regime::RiskWar: return "RiskWar";
    case Regime::HighUncertainty: return "HighUncertainty";
  }
  return "Unknown";
}

Solution solve(const GameParams& params) {
  const ThresholdSet s = threshold_set(params);
  const bool low = peace_interval(params).exists;

  std::vector<Candidate> cands;
  cands.push_back({s.beta_r_minus, gov_expected(params, s.beta_r_minus).total});
  if (!low) cands.push_back({s.beta_g_plus, gov_expected(params, s.beta_g_plus).total});
  for (const StationaryPoint& sp : stationary_points(params)) {
    if (sp.kind != PointKind::Max) continue;
    cands.push_back({sp.beta, gov_branch_value(params, sp.branch, sp.beta).total});
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.beta < b.beta; });
  cands.erase(std::unique(cands.begin(), cands.end(),
                          [](const Candidate& a, const Candidate& b) {
                            return std::abs(a.beta - b.beta) < kRootTolerance;
                          }),
              cands.end());

  double best = -std::numeric_limits<double>::infinity();
  for (const Candidate& c : cands) best = std::max(best, c.payoff);
  // Smallest beta within the tie tolerance of the best payoff.
  const Candidate* chosen = nullptr;
  for (const Candidate& c : cands) {
    if (c.payoff >= best - kTieTolerance) {
      chosen = &c;
      break;
    }
  }
  double runner_up = -std::numeric_limits<double>::infinity();
  for (const Candidate& c : cands) {
    if (&c != chosen) runner_up = std::max(runner_up, c.payoff);
  }
  const double gap = cands.size() > 1 ? chosen->payoff - runner_up
                                      : std::numeric_limits<double>::infinity();

  Solution sol;
  sol.beta_star = chosen->beta;
  sol.regime = low ? low_regime_of(chosen->beta, s.beta_r_minus) : Regime::HighUncertainty;
  sol.candidates = cands;
  sol.near_tie_gap = gap;
  sol.is_unique = !(std::abs(gap) <= kTieTolerance);
  sol.beta_r_minus = s.beta_r_minus;
  sol.beta_g_plus = s.beta_g_plus;
  sol.beta_r_plus = s.beta_r_plus;
  return sol;
}

Solution solve(const SymmetricParams& params) { return solve(params.base()); }

SwitchCondition switch_condition(const SymmetricParams& params) {
  const double alpha = params.alpha();
  const double a = params.half_width();
  const double w = std::exp(params.x() - a);
  const double eta = alpha * (a + 1.0) - 1.0;
  const double poly = (1.0 - alpha) * w * w - 2.0 * eta * w + (1.0 - alpha);

  SwitchCondition out;
  out.derivative_positive = std::isfinite(poly) && poly < 0.0;
  const double disc = alpha * a * (alpha * (a + 2.0) - 2.0);
  out.real_roots = disc >= 0.0;
  if (out.real_roots) {
    const double root = std::sqrt(disc);
    out.x_lo = a + std::log((eta - root) / (1.0 - alpha));
    out.x_hi = a + std::log((eta + root) / (1.0 - alpha));
  } else {
    out.x_lo = out.x_hi = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

namespace {

struct TieProbe {
  double gap;
  double beta_r_minus;
  double beta_interior;
};

TieProbe probe_tie(const GameParams& p) {
  const ThresholdSet s = threshold_set(p);
  const double at_boundary = gov_expected(p, s.beta_r_minus).total;
  TieProbe t{-std::numeric_limits<double>::infinity(), s.beta_r_minus,
             std::numeric_limits<double>::quiet_NaN()};
  double best = -std::numeric_limits<double>::infinity();
  for (const StationaryPoint& pt : stationary_points(p)) {
    if (pt.kind != PointKind::Max) continue;
    const double u = gov_branch_value(p, pt.branch, pt.beta).total;
    if (u > best) {
      best = u;
      t.beta_interior = pt.beta;
    }
  }
  if (std::isfinite(best)) t.gap = best - at_boundary;
  return t;
}

TieProbe probe_tie(double alpha, double x, double a) {
  return probe_tie(SymmetricParams::checked(x, 0.0, alpha, a).base());
}

}  // namespace

double peace_tie_gap(const GameParams& params) { return probe_tie(params).gap; }

std::optional<JumpPoint> detect_jump(double alpha, double x, const std::vector<double>& a_grid) {
  struct Point {
    double a;
    double beta_star;
    double beta_r_minus;
    Regime regime;
    bool ok;
  };
  std::vector<Point> pts;
  pts.reserve(a_grid.size());
  for (double a : a_grid) {
    Point pt{a, 0.0, 0.0, Regime::HighUncertainty, false};
    const auto v = SymmetricParams::make(x, 0.0, alpha, a);
    if (v.ok()) {
      const Solution sol = solve(*v);
      pt = {a, sol.beta_star, sol.beta_r_minus, sol.regime, true};
    }
    pts.push_back(pt);
  }

  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Point& l = pts[i - 1];
    const Point& r = pts[i];
    if (!l.ok || !r.ok) continue;
    if (l.regime == Regime::HighUncertainty || r.regime == Regime::HighUncertainty) continue;
    if (l.regime == r.regime) continue;
    const double step = std::abs(r.beta_r_minus - l.beta_r_minus);
    if (!(std::abs(r.beta_star - l.beta_star) > 10.0 * step)) continue;

    // Bisection on the sign of the payoff tie between the two candidates.
    const bool rising = l.regime == Regime::GuaranteePeace;
    double lo = l.a;
    double hi = r.a;
    double mid = 0.5 * (lo + hi);
    TieProbe mid_probe = probe_tie(alpha, x, mid);
    for (int it = 0; it < 200; ++it) {
      mid = 0.5 * (lo + hi);
      mid_probe = probe_tie(alpha, x, mid);
      if (std::abs(mid_probe.gap) < 1e-12 || hi - lo < 1e-15) break;
      const bool peace_side = !(mid_probe.gap > 0.0);
      if (peace_side == rising) lo = mid; else hi = mid;
    }
    if (!std::isfinite(mid_probe.gap)) continue;
    const double jump = std::abs(mid_probe.beta_interior - mid_probe.beta_r_minus);
    if (!(jump > 10.0 * step)) continue;  // a continuous switch, not a jump
    return JumpPoint{mid, l.a, r.a, mid_probe.beta_r_minus, mid_probe.beta_interior,
                     std::abs(mid_probe.gap)};
  }
  return std::nullopt;
}

}  // namespace bargain
