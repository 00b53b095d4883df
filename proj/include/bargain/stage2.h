#pragma once

// Second-stage best responses once the shock is realised, and the transfer
// bounds they induce over a bounded support.

#include "bargain/model.h"

namespace bargain {

// A real number or one of the two infinities, kept as a tag so that infinite
// thresholds never leak into arithmetic.
class ExtendedReal {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  static ExtendedReal finite(double v) { return ExtendedReal(Kind::Finite, v); }
  static ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf, 0.0); }
  static ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf, 0.0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  // Throws DomainViolation when infinite.
  double value() const;
  // Projects onto [lo, hi]; infinities map to the matching end.
  double clamp(double lo, double hi) const;

  bool less_than(double v) const;     // *this < v
  bool greater_than(double v) const;  // *this > v

 private:
  ExtendedReal(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

struct FightThresholds {
  ExtendedReal t_g;  // government fights iff eps < t_g
  ExtendedReal t_r;  // rebels fight iff eps > t_r
};

enum class Decision { Accept, Fight };

struct BestResponse {
  Decision government;
  Decision rebels;

  bool war() const { return government == Decision::Fight || rebels == Decision::Fight; }
};

// t_g = log(alpha/beta - 1) + x for beta < alpha, else -inf.
// t_r = x - log(alpha/(1-beta) - 1) for 1 - beta < alpha, else +inf.
// The rebel threshold follows the derivation in the proof (sign on the log
// term); the stated proposition carries the opposite sign.
FightThresholds fight_thresholds(const GameParams& params, double beta);

// Fighting needs a strict preference: a shock exactly at a threshold is
// resolved as Accept.
BestResponse best_response(const FightThresholds& thresholds, double eps);
BestResponse best_response(const GameParams& params, double beta, double eps);

struct ThresholdSet {
  double beta_g_minus;  // government fights for every shock below this
  double beta_g_plus;   // government accepts for every shock at or above this
  double beta_r_minus;  // rebels accept for every shock at or below this
  double beta_r_plus;   // rebels fight for every shock above this
};

ThresholdSet threshold_set(const GameParams& params);

struct PeaceInterval {
  bool exists;  // tolerates an overlap of 1e-12 from rounding at the critical width
  double lo;  // beta_g_plus
  double hi;  // beta_r_minus
};

PeaceInterval peace_interval(const GameParams& params);

// Largest half-width of a symmetric support that still admits a
// peace-guaranteeing transfer. Unbounded when alpha <= 1/2.
class CriticalWidth {
 public:
  static CriticalWidth unbounded() { return CriticalWidth(true, 0.0); }
  static CriticalWidth finite(double h) { return CriticalWidth(false, h); }

  bool is_unbounded() const { return unbounded_; }
  // Throws DomainViolation when unbounded.
  double half_width() const;
  // The half-width, or `fallback` when unbounded.
  double value_or(double fallback) const { return unbounded_ ? fallback : value_; }

 private:
  CriticalWidth(bool u, double v) : unbounded_(u), value_(v) {}
  bool unbounded_;
  double value_;
};

// Closed form: log z2, z2 = (zeta - sqrt(zeta^2 - 4(1-2a)))/(2(1-2a)),
// zeta = (alpha - 1)(e^x + e^-x). Half-width convention.
CriticalWidth a_crit(double alpha, double x);

// Bisection on the peace-interval gap for a symmetric support centred at
// `center`, i.e. [center - h, center + h]. Searches h in (0, h_max].
CriticalWidth critical_half_width_numeric(double alpha, double x, double center = 0.0,
                                          double h_max = 200.0);

}  // namespace bargain
