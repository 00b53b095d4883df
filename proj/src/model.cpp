#include "bargain/model.h"

#include <cmath>

namespace bargain {

Validated<GameParams> GameParams::validate(const ParamValues& raw) {
  Validated<GameParams> out;
  const bool finite = std::isfinite(raw.y_g) && std::isfinite(raw.y_r) && std::isfinite(raw.alpha) &&
                      std::isfinite(raw.a_lo) && std::isfinite(raw.a_hi);
  if (!finite) out.errors.push_back(ErrorCode::NonFiniteField);
  // NaN compares false, so these only fire on genuine range violations.
  if (std::isfinite(raw.alpha) && !(raw.alpha > 0.0 && raw.alpha < 1.0)) {
    out.errors.push_back(ErrorCode::AlphaOutOfRange);
  }
  if (std::isfinite(raw.a_lo) && std::isfinite(raw.a_hi) && !(raw.a_lo < raw.a_hi)) {
    out.errors.push_back(ErrorCode::DegenerateSupport);
  }
  if (out.errors.empty()) out.value = GameParams(raw);
  return out;
}

GameParams GameParams::checked(const ParamValues& raw) {
  auto v = validate(raw);
  if (!v.ok()) throw Error(v.errors.front(), "invalid game parameters");
  return *v;
}

Validated<SymmetricParams> SymmetricParams::make(double y_g, double y_r, double alpha,
                                                 double half_width) {
  Validated<SymmetricParams> out;
  auto base = GameParams::validate({y_g, y_r, alpha, -half_width, half_width});
  out.errors = base.errors;
  if (base.ok()) out.value = SymmetricParams(*base);
  return out;
}

SymmetricParams SymmetricParams::checked(double y_g, double y_r, double alpha, double half_width) {
  auto v = make(y_g, y_r, alpha, half_width);
  if (!v.ok()) throw Error(v.errors.front(), "invalid symmetric parameters");
  return *v;
}

SymmetricParams SymmetricParams::from(const GameParams& params) {
  if (params.a_lo() != -params.a_hi()) {
    throw Error(ErrorCode::AsymmetricSupport, "support must be [-h, h]");
  }
  return SymmetricParams(params);
}

double logistic_of_neg(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

WinProb win_prob(double y_g, double y_r, double eps) {
  const double d = y_r + eps - y_g;
  return {logistic_of_neg(d), logistic_of_neg(-d)};
}

WinProb win_prob(const GameParams& params, double eps) {
  return win_prob(params.y_g(), params.y_r(), eps);
}

}  // namespace bargain
