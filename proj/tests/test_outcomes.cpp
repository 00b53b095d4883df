#include <cmath>

#include "doctest.h"

#include "bargain/outcomes.h"
#include "oracles.h"
#include "test_support.h"

using namespace bargain;

TEST_CASE("war probability at the rebel bounds") {
  testing_support::Draws d(61);
  for (int i = 0; i < 500; ++i) {
    const SymmetricParams sp = d.low_regime();
    const ThresholdSet s = threshold_set(sp.base());
    CHECK(war_probability(sp, s.beta_r_minus) == 0.0);
    CHECK(war_probability(sp, 0.5 * (s.beta_r_plus + 1.0)) == 1.0);
  }
}

TEST_CASE("war probability on the RebMayFight branch") {
  const SymmetricParams sp = SymmetricParams::checked(0, 0, 0.7, 1.0);
  const double expected = (1.0 + std::log(0.75)) / 2.0;
  CHECK(war_probability(sp, 0.6) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::abs(oracle::payoffs(sp.base(), 0.6).prob_war - expected) < 1e-12);
  // (a - t_r) / (2a) wherever t_r sits inside the support.
  testing_support::Draws d(62);
  for (int i = 0; i < 500; ++i) {
    const SymmetricParams p = d.low_regime();
    const ThresholdSet s = threshold_set(p.base());
    const double beta = d.uniform(s.beta_r_minus, s.beta_r_plus);
    const double t_r = fight_thresholds(p.base(), beta).t_r.value();
    const double a = p.half_width();
    CHECK(war_probability(p, beta) == doctest::Approx((a - t_r) / (2 * a)).epsilon(1e-12));
  }
}

TEST_CASE("war probability matches the preference rule everywhere") {
  testing_support::Draws d(63);
  for (int i = 0; i < 500; ++i) {
    const GameParams p = d.general();
    const double beta = d.beta_for(p);
    const double v = war_probability(p, beta);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(std::abs(v - oracle::payoffs(p, beta).prob_war) < 1e-10);
  }
}

TEST_CASE("outcome report identities") {
  testing_support::Draws d(64);
  for (int i = 0; i < 300; ++i) {
    const SymmetricParams sp = d.any_symmetric();
    const Solution sol = solve(sp);
    const OutcomeReport r = outcome_report(sp, sol);
    CHECK(std::abs(r.welfare - (1.0 - r.prob_war * (1.0 - sp.alpha()))) < 1e-10);
    CHECK(std::abs(r.gov_payoff + r.reb_payoff - r.welfare) < 1e-10);
    CHECK(r.welfare >= sp.alpha() - 1e-15);
    CHECK(r.welfare <= 1.0);
    if (r.regime == Regime::GuaranteePeace) {
      CHECK(r.welfare == 1.0);
      CHECK(r.prob_war == 0.0);
    }
  }
}

TEST_CASE("comparative statics along half-width sweeps") {
  for (auto [alpha, x] : {std::pair{0.9, 1.0}, std::pair{0.7, 1.0}, std::pair{0.55, 1.0},
                          std::pair{0.8, 2.0}, std::pair{0.7, -1.0}}) {
    const double crit = a_crit(alpha, x).half_width();
    std::optional<OutcomeReport> prev;
    std::optional<double> prev_brm;
    for (int k = 1; k <= 300; ++k) {
      const double a = crit * k / 300.0;
      const SymmetricParams sp = SymmetricParams::checked(x, 0, alpha, a);
      const Solution sol = solve(sp);
      const OutcomeReport r = outcome_report(sp, sol);
      if (prev && prev->regime == Regime::RiskWar && r.regime == Regime::RiskWar) {
        CHECK(r.prob_war >= prev->prob_war - 1e-9);
        CHECK(r.welfare <= prev->welfare + 1e-9);
      }
      if (r.regime == Regime::GuaranteePeace) {
        CHECK(r.welfare == 1.0);
        CHECK(r.gov_payoff == sol.beta_r_minus);
        // Closed form of beta_r_minus on a symmetric support.
        CHECK(sol.beta_r_minus == doctest::Approx(1.0 - alpha / (1.0 + std::exp(x - a))).epsilon(1e-13));
        if (prev && prev->regime == Regime::GuaranteePeace) {
          CHECK(r.gov_payoff < prev->gov_payoff);
          CHECK(r.reb_payoff > prev->reb_payoff);
        }
      }
      prev = r;
      prev_brm = sol.beta_r_minus;
    }
  }
}
