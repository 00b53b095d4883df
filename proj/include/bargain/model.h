#pragma once

// Parameter vector, shock support and the logit contest success function.
//
// Conventions: x = y_g - y_r is the pre-shock arms advantage of the
// government. "Uncertainty" is the full support width a_hi - a_lo; the
// symmetric case stores the half-width separately (support [-h, h]).

#include <optional>
#include <vector>

#include "bargain/error.h"

namespace bargain {

struct ParamValues {
  double y_g = 0.0;
  double y_r = 0.0;
  double alpha = 0.0;
  double a_lo = 0.0;
  double a_hi = 0.0;
};

template <class T>
struct Validated {
  std::optional<T> value;
  std::vector<ErrorCode> errors;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

class GameParams {
 public:
  // Collects every violated invariant rather than stopping at the first.
  static Validated<GameParams> validate(const ParamValues& raw);
  // Throws Error with the first violation.
  static GameParams checked(const ParamValues& raw);

  double y_g() const { return v_.y_g; }
  double y_r() const { return v_.y_r; }
  double alpha() const { return v_.alpha; }
  double a_lo() const { return v_.a_lo; }
  double a_hi() const { return v_.a_hi; }
  double x() const { return v_.y_g - v_.y_r; }
  double width() const { return v_.a_hi - v_.a_lo; }
  const ParamValues& values() const { return v_; }

 private:
  explicit GameParams(const ParamValues& v) : v_(v) {}
  ParamValues v_;
};

// Uniform shock on [-half_width, half_width].
class SymmetricParams {
 public:
  static Validated<SymmetricParams> make(double y_g, double y_r, double alpha, double half_width);
  static SymmetricParams checked(double y_g, double y_r, double alpha, double half_width);
  // Accepts a general parameter set whose support happens to be symmetric.
  static SymmetricParams from(const GameParams& params);

  const GameParams& base() const { return base_; }
  double half_width() const { return base_.a_hi(); }
  double alpha() const { return base_.alpha(); }
  double x() const { return base_.x(); }

 private:
  explicit SymmetricParams(const GameParams& g) : base_(g) {}
  GameParams base_;
};

struct WinProb {
  double p_g;
  double p_r;
};

// Numerically stable logistic 1 / (1 + exp(z)).
double logistic_of_neg(double z);
// log(1 + exp(z)) without overflow.
double softplus(double z);

// p_g = exp(y_g) / (exp(y_g) + exp(y_r + eps)).
WinProb win_prob(const GameParams& params, double eps);
WinProb win_prob(double y_g, double y_r, double eps);

}  // namespace bargain
