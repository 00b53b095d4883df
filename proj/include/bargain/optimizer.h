#pragma once

// First-stage choice of the transfer beta by the government.

#include <optional>
#include <string_view>
#include <vector>

#include "bargain/model.h"
#include "bargain/payoff.h"

namespace bargain {

inline constexpr double kFocDomainGuard = 1e-10;
inline constexpr double kTieTolerance = 1e-10;

struct FocResidual {
  double value;
  double beta;
};

// g(beta) = a + x + alpha(1-alpha)/((1-beta)(1-alpha-beta)) - log((alpha+beta-1)/(1-beta)),
// i.e. 2a times the slope of the RebMayFight payoff. Requires
// 1-alpha+guard < beta < 1-guard, otherwise DomainViolation.
FocResidual foc_residual(const SymmetricParams& params, double beta);
// Same quantity with the rational term split as
// alpha*beta/((1-beta)(1-alpha-beta)) + alpha/(1-beta).
FocResidual foc_residual_alt(const SymmetricParams& params, double beta);

// Width times the slope of the government payoff on a smooth branch.
// Meaningful for GovMayFight, GuaranteedPeace, RebMayFight and BothMayFight;
// the always-war branches are flat.
double branch_slope(const GameParams& params, Branch branch, double beta);

enum class PointKind { Max, Min, Flat };

struct StationaryPoint {
  double beta;
  Branch branch;
  PointKind kind;
};

// Interior zeros of the payoff slope on the branches right of beta_r_minus.
// Low regime: roots of g on (beta_r_minus, beta_r_plus). High regime: also the
// BothMayFight piece on (beta_r_minus, beta_g_plus).
std::vector<StationaryPoint> stationary_points(const GameParams& params);
std::vector<StationaryPoint> stationary_points(const SymmetricParams& params);

enum class Regime { GuaranteePeace, RiskWar, HighUncertainty };

std::string_view regime_name(Regime r);

struct Candidate {
  double beta;
  double payoff;
};

struct Solution {
  double beta_star;
  Regime regime;
  std::vector<Candidate> candidates;
  bool is_unique;
  // Payoff gap between the best and the runner-up candidate; +inf when there
  // is only one candidate.
  double near_tie_gap;
  double beta_r_minus;
  double beta_g_plus;
  double beta_r_plus;
};

Solution solve(const GameParams& params);
Solution solve(const SymmetricParams& params);

// U(best interior maximum) - U(beta_r_minus) in the low regime; -inf when the
// payoff has no interior maximum. Positive means the government risks war.
double peace_tie_gap(const GameParams& params);

struct SwitchCondition {
  bool real_roots;           // false is the NoRealRoots marker: alpha(a+2) < 2
  bool derivative_positive;  // slope of the payoff just right of beta_r_minus
  double x_lo;               // x-band where the slope is positive (NaN without real roots)
  double x_hi;
};

// Sign test of (1-alpha)w^2 - 2 eta w + (1-alpha) with w = e^{x-a} and
// eta = alpha(a+1) - 1. Negative means the payoff still rises past beta_r_minus.
SwitchCondition switch_condition(const SymmetricParams& params);

struct JumpPoint {
  double a_jump;
  double bracket_lo;
  double bracket_hi;
  double beta_before;  // beta_r_minus at a_jump
  double beta_after;   // interior maximiser at a_jump
  double tie_gap;      // |U(interior max) - U(beta_r_minus)| at a_jump
};

// Scans an increasing grid of half-widths at fixed (alpha, x) for a
// discontinuity in the optimal transfer and refines it on the payoff tie.
std::optional<JumpPoint> detect_jump(double alpha, double x, const std::vector<double>& a_grid);

}  // namespace bargain
