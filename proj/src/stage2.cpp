#include "bargain/stage2.h"

#include <cmath>

namespace bargain {

double ExtendedReal::value() const {
  if (kind_ != Kind::Finite) throw Error(ErrorCode::DomainViolation, "infinite threshold");
  return value_;
}

double ExtendedReal::clamp(double lo, double hi) const {
  switch (kind_) {
    case Kind::NegInf: return lo;
    case Kind::PosInf: return hi;
    case Kind::Finite: break;
  }
  if (value_ < lo) return lo;
  if (value_ > hi) return hi;
  return value_;
}

bool ExtendedReal::less_than(double v) const {
  switch (kind_) {
    case Kind::NegInf: return true;
    case Kind::PosInf: return false;
    case Kind::Finite: break;
  }
  return value_ < v;
}

bool ExtendedReal::greater_than(double v) const {
  switch (kind_) {
    case Kind::NegInf: return false;
    case Kind::PosInf: return true;
    case Kind::Finite: break;
  }
  return value_ > v;
}

FightThresholds fight_thresholds(const GameParams& params, double beta) {
  const double alpha = params.alpha();
  const double x = params.x();
  FightThresholds t{ExtendedReal::neg_inf(), ExtendedReal::pos_inf()};

  if (beta <= 0.0) {
    t.t_g = ExtendedReal::pos_inf();
  } else if (beta < alpha) {
    t.t_g = ExtendedReal::finite(std::log(alpha - beta) - std::log(beta) + x);
  }

  const double share_r = 1.0 - beta;
  if (share_r <= 0.0) {
    t.t_r = ExtendedReal::neg_inf();
  } else if (share_r < alpha) {
    t.t_r = ExtendedReal::finite(x - (std::log(alpha - share_r) - std::log(share_r)));
  }
  return t;
}

BestResponse best_response(const FightThresholds& thresholds, double eps) {
  return {thresholds.t_g.greater_than(eps) ? Decision::Fight : Decision::Accept,
          thresholds.t_r.less_than(eps) ? Decision::Fight : Decision::Accept};
}

BestResponse best_response(const GameParams& params, double beta, double eps) {
  return best_response(fight_thresholds(params, beta), eps);
}

ThresholdSet threshold_set(const GameParams& params) {
  const double alpha = params.alpha();
  const double x = params.x();
  // alpha / (exp(z) + 1) == alpha * logistic_of_neg(z)
  return {
      alpha * logistic_of_neg(params.a_hi() - x),
      alpha * logistic_of_neg(params.a_lo() - x),
      1.0 - alpha * logistic_of_neg(x - params.a_hi()),
      1.0 - alpha * logistic_of_neg(x - params.a_lo()),
  };
}

PeaceInterval peace_interval(const GameParams& params) {
  const ThresholdSet s = threshold_set(params);
  // At the critical width the interval is a single point; rounding in the two
  // bounds must not decide whether it exists.
  constexpr double kSlack = 1e-12;
  return {s.beta_g_plus <= s.beta_r_minus + kSlack, s.beta_g_plus, s.beta_r_minus};
}

double CriticalWidth::half_width() const {
  if (unbounded_) throw Error(ErrorCode::DomainViolation, "critical width is unbounded");
  return value_;
}

CriticalWidth a_crit(double alpha, double x) {
  if (!(alpha > 0.5)) return CriticalWidth::unbounded();
  const double c = 1.0 - 2.0 * alpha;
  const double zeta = (alpha - 1.0) * 2.0 * std::cosh(x);
  const double z2 = (zeta - std::sqrt(zeta * zeta - 4.0 * c)) / (2.0 * c);
  return CriticalWidth::finite(std::log(z2));
}

CriticalWidth critical_half_width_numeric(double alpha, double x, double center, double h_max) {
  auto gap = [&](double h) {
    const GameParams p = GameParams::checked({x, 0.0, alpha, center - h, center + h});
    const ThresholdSet s = threshold_set(p);
    return s.beta_r_minus - s.beta_g_plus;
  };
  // The gap is strictly decreasing in h, so one sign change at most.
  if (gap(h_max) >= 0.0) return CriticalWidth::unbounded();
  double lo = 0.0;
  double hi = h_max;
  if (gap(1e-12) < 0.0) return CriticalWidth::finite(0.0);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) >= 0.0 ? lo : hi) = mid;
  }
  return CriticalWidth::finite(0.5 * (lo + hi));
}

}  // namespace bargain
