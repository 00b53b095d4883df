#pragma once

// Expected payoffs before the shock is realised, for a shock uniform on the
// support. Every integral of the win probability goes through the closed
// antiderivative  F(e) = e - log(1 + exp(e - x)).

#include <string_view>

#include "bargain/model.h"
#include "bargain/stage2.h"

namespace bargain {

enum class Branch {
  AlwaysWarLow,     // beta < beta_g_minus: government always fights
  GovMayFight,      // government fights on low shocks
  GuaranteedPeace,  // [beta_g_plus, beta_r_minus]
  RebMayFight,      // rebels fight on high shocks
  AlwaysWarHigh,    // beta > beta_r_plus: rebels always fight
  BothMayFight,     // only when the peace interval is empty
};

std::string_view branch_name(Branch b);

struct PayoffBreakdown {
  double total;
  Branch branch;
  double war_component;
  double peace_component;
  double prob_war;
};

struct ExpectedWinProb {
  double p_tilde_g;
};

// Integral of p_G over [lo, hi]; both ends must lie in the support.
double partial_win_mass(const GameParams& params, double lo, double hi);

ExpectedWinProb expected_win_prob(const GameParams& params);

// Branch containing beta. Breakpoints go to the more peaceful neighbour.
Branch classify(const ThresholdSet& bounds, bool peace_exists, double beta);

// Evaluates one branch's formula at beta without checking that beta lies in
// that branch. Used for one-sided limits at breakpoints.
PayoffBreakdown gov_branch_value(const GameParams& params, Branch branch, double beta);
PayoffBreakdown reb_branch_value(const GameParams& params, Branch branch, double beta);

// Government payoff when a peace interval exists. Throws RegimeMismatch otherwise.
PayoffBreakdown gov_payoff(const SymmetricParams& params, double beta);
// Government payoff when the peace interval is empty. Throws RegimeMismatch otherwise.
PayoffBreakdown gov_payoff_high(const SymmetricParams& params, double beta);
// Rebel payoff; picks the regime itself.
PayoffBreakdown reb_payoff(const SymmetricParams& params, double beta);

// Regime-agnostic versions over an arbitrary bounded support.
PayoffBreakdown gov_expected(const GameParams& params, double beta);
PayoffBreakdown reb_expected(const GameParams& params, double beta);

}  // namespace bargain
