#include "bargain/outcomes.h"

#include <cassert>

#include "bargain/payoff.h"
#include "bargain/stage2.h"

namespace bargain {

double war_probability(const GameParams& params, double beta) {
  const FightThresholds t = fight_thresholds(params, beta);
  const double lo = params.a_lo();
  const double hi = params.a_hi();
  const double g = t.t_g.clamp(lo, hi);
  const double r = t.t_r.clamp(lo, hi);
  const double fight = g >= r ? hi - lo : (g - lo) + (hi - r);
  const double p = fight / params.width();
  assert(p > -1e-12 && p < 1.0 + 1e-12);
  // A threshold that lands on a support end up to rounding is that end.
  if (p < 1e-12) return 0.0;
  if (p > 1.0 - 1e-12) return 1.0;
  return p;
}

double war_probability(const SymmetricParams& params, double beta) {
  return war_probability(params.base(), beta);
}

OutcomeReport outcome_report(const GameParams& params, const Solution& solution) {
  const double beta = solution.beta_star;
  OutcomeReport r;
  r.regime = solution.regime;
  r.gov_payoff = gov_expected(params, beta).total;
  r.reb_payoff = reb_expected(params, beta).total;
  if (solution.regime == Regime::GuaranteePeace) {
    r.prob_war = 0.0;
    r.welfare = 1.0;
  } else {
    r.prob_war = war_probability(params, beta);
    r.welfare = 1.0 - r.prob_war * (1.0 - params.alpha());
  }
  return r;
}

OutcomeReport outcome_report(const SymmetricParams& params, const Solution& solution) {
  return outcome_report(params.base(), solution);
}

}  // namespace bargain
