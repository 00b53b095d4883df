#pragma once

// Equilibrium outcomes at a chosen transfer.

#include "bargain/model.h"
#include "bargain/optimizer.h"

namespace bargain {

// Uniform measure of the shocks on which someone fights. Computed from the
// fight thresholds alone, independently of the payoff branches.
double war_probability(const GameParams& params, double beta);
double war_probability(const SymmetricParams& params, double beta);

struct OutcomeReport {
  double prob_war;
  double welfare;  // 1 - prob_war * (1 - alpha)
  double gov_payoff;
  double reb_payoff;
  Regime regime;
};

OutcomeReport outcome_report(const GameParams& params, const Solution& solution);
OutcomeReport outcome_report(const SymmetricParams& params, const Solution& solution);

}  // namespace bargain
