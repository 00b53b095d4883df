#include <cmath>

#include "doctest.h"

#include "bargain/optimizer.h"
#include "oracles.h"
#include "test_support.h"

using namespace bargain;

namespace {

double gov(const SymmetricParams& sp, double beta) { return gov_expected(sp.base(), beta).total; }

int sign_changes_of_g(const SymmetricParams& sp, int n) {
  const ThresholdSet s = threshold_set(sp.base());
  int changes = 0;
  double prev = foc_residual(sp, s.beta_r_minus).value;
  for (int i = 1; i <= n; ++i) {
    const double b = s.beta_r_minus + (s.beta_r_plus - s.beta_r_minus) * i / n;
    const double v = foc_residual(sp, b).value;
    if ((v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  return changes;
}

}  // namespace

TEST_CASE("both residual forms agree") {
  testing_support::Draws d(41);
  for (int i = 0; i < 100; ++i) {
    const SymmetricParams sp = d.any_symmetric();
    const double lo = 1.0 - sp.alpha();
    for (int k = 0; k < 100; ++k) {
      const double b = d.uniform(lo + 1e-6, 1.0 - 1e-6);
      CHECK(std::abs(foc_residual(sp, b).value - foc_residual_alt(sp, b).value) < 1e-10);
    }
  }
}

TEST_CASE("residual domain") {
  const SymmetricParams sp = SymmetricParams::checked(0, 0, 0.7, 0.8);
  CHECK_THROWS_AS(foc_residual(sp, 0.3), Error);
  CHECK_THROWS_AS(foc_residual(sp, 0.2), Error);
  CHECK_THROWS_AS(foc_residual(sp, 1.0), Error);
  CHECK_THROWS_AS(foc_residual_alt(sp, 0.3 + 1e-11), Error);
  CHECK_NOTHROW(foc_residual(sp, 0.3 + 1e-9));
}

TEST_CASE("rational term dominates near the lower pole") {
  // alpha(1-alpha)/((1-beta)(1-alpha-beta)) -> -inf faster than the log term
  // grows, so the residual diverges downwards as beta -> (1-alpha)+.
  const SymmetricParams sp = SymmetricParams::checked(0, 0, 0.7, 0.8);
  double prev = foc_residual(sp, 0.3 + 1e-3).value;
  for (double gap : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9}) {
    const double v = foc_residual(sp, 0.3 + gap).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK(prev < -1e8);
  // Near beta -> 1 both terms are negative, so the residual falls there too.
  CHECK(foc_residual(sp, 1.0 - 1e-6).value < foc_residual(sp, 1.0 - 1e-3).value);
  CHECK(foc_residual(sp, 1.0 - 1e-9).value < -1e8);
}

TEST_CASE("residual sign at beta_r_minus matches the payoff slope") {
  const SymmetricParams sp = SymmetricParams::checked(0, 0, 0.7, 0.8);
  const double b = threshold_set(sp.base()).beta_r_minus;
  const double g = foc_residual(sp, b).value;
  const double h = 1e-7;
  const double fd = (gov(sp, b + h) - gov(sp, b)) / h;
  CHECK((g > 0) == (fd > 0));
  CHECK(g / (2 * 0.8) == doctest::Approx(fd).epsilon(1e-4));
}

TEST_CASE("residual is 2a times the slope on the RebMayFight branch") {
  testing_support::Draws d(42);
  for (int i = 0; i < 200; ++i) {
    const SymmetricParams sp = d.low_regime();
    const ThresholdSet s = threshold_set(sp.base());
    const double b = d.uniform(s.beta_r_minus, s.beta_r_plus);
    const double h = 1e-6 * (s.beta_r_plus - s.beta_r_minus);
    if (b - h < s.beta_r_minus || b + h > s.beta_r_plus) continue;
    const double fd = oracle::central_difference([&](double x) { return gov(sp, x); }, b, h);
    const double an = foc_residual(sp, b).value / (2 * sp.half_width());
    CHECK(std::abs(an - fd) < std::max(1e-6, 1e-4 * std::abs(an)));
  }
}

TEST_CASE("slope is negative at beta_r_plus") {
  testing_support::Draws d(43);
  for (int i = 0; i < 1000; ++i) {
    const SymmetricParams sp = d.low_regime();
    CHECK(foc_residual(sp, threshold_set(sp.base()).beta_r_plus).value < 0.0);
  }
}

TEST_CASE("at most two stationary points, matching a dense sign scan") {
  testing_support::Draws d(44);
  for (int i = 0; i < 300; ++i) {
    const SymmetricParams sp = d.low_regime();
    const auto pts = stationary_points(sp);
    CHECK(pts.size() <= 2);
    CHECK(static_cast<int>(pts.size()) == sign_changes_of_g(sp, 10000));
    for (const auto& p : pts) CHECK(std::abs(foc_residual(sp, p.beta).value) < 1e-8);
    if (pts.size() == 2) {
      CHECK(pts[0].kind == PointKind::Min);
      CHECK(pts[1].kind == PointKind::Max);
    }
  }
}

TEST_CASE("interior root near the critical width at alpha 0.9") {
  const double crit = a_crit(0.9, 1.0).half_width();
  const SymmetricParams sp = SymmetricParams::checked(1.0, 0.0, 0.9, 0.99 * crit);
  CHECK(sign_changes_of_g(sp, 2048) >= 1);
  const auto pts = stationary_points(sp);
  REQUIRE(pts.size() >= 1);
  CHECK(pts.back().kind == PointKind::Max);
}

TEST_CASE("solve agrees with a grid search") {
  testing_support::Draws d(45);
  for (int i = 0; i < 60; ++i) {
    const SymmetricParams sp = d.low_regime();
    const Solution sol = solve(sp);
    const ThresholdSet s = threshold_set(sp.base());
    const int n = 100000;
    const auto [b, u] = oracle::grid_argmax([&](double x) { return gov(sp, x); }, s.beta_g_minus,
                                            s.beta_r_plus, n);
    const double step = (s.beta_r_plus - s.beta_g_minus) / n;
    CHECK(std::abs(sol.beta_star - b) <= 2 * step);
    CHECK(gov(sp, sol.beta_star) >= u - 1e-12);
  }
}

TEST_CASE("solve against quadrature payoffs on a coarse grid") {
  testing_support::Draws d(46);
  for (int i = 0; i < 8; ++i) {
    const SymmetricParams sp = d.low_regime();
    const Solution sol = solve(sp);
    const ThresholdSet s = threshold_set(sp.base());
    const auto [b, u] = oracle::grid_argmax(
        [&](double x) { return oracle::payoffs(sp.base(), x).gov; }, s.beta_g_minus, s.beta_r_plus, 2000);
    CHECK(oracle::payoffs(sp.base(), sol.beta_star).gov >= u - 1e-10);
    (void)b;
  }
}

TEST_CASE("optimum lies in [beta_r_minus, beta_r_plus) and above beta_g_plus") {
  testing_support::Draws d(47);
  for (int i = 0; i < 1000; ++i) {
    const SymmetricParams sp = d.low_regime();
    const Solution sol = solve(sp);
    CHECK(sol.beta_star >= sol.beta_r_minus);
    CHECK(sol.beta_star < sol.beta_r_plus);
    CHECK(sol.beta_star >= sol.beta_g_plus);
    CHECK(fight_thresholds(sp.base(), sol.beta_star).t_g.clamp(-1e300, 1e300) <= sp.base().a_lo());
    CHECK((sol.regime == Regime::GuaranteePeace) == (sol.beta_star == sol.beta_r_minus));
  }
}

TEST_CASE("government never risks war when out-armed") {
  for (double alpha : {0.55, 0.6, 0.7, 0.8, 0.9, 0.95}) {
    const double crit = a_crit(alpha, -1.0).half_width();
    for (int k = 1; k < 40; ++k) {
      const Solution sol = solve(SymmetricParams::checked(-1.0, 0.0, alpha, crit * k / 40.0));
      CHECK(sol.regime == Regime::GuaranteePeace);
      CHECK(sol.beta_star == sol.beta_r_minus);
    }
  }
}

TEST_CASE("ties go to the smaller transfer") {
  // Refine onto a tie at alpha 0.55, x 1 and check both sides of it.
  std::vector<double> grid;
  for (int i = 0; i < 400; ++i) grid.push_back(1e-4 + (2.6 - 1e-4) * i / 399.0);
  const auto jump = detect_jump(0.55, 1.0, grid);
  REQUIRE(jump);
  const Solution at = solve(SymmetricParams::checked(1.0, 0.0, 0.55, jump->a_jump));
  CHECK(at.candidates.size() == 2);
  CHECK(std::abs(at.near_tie_gap) < 1e-8);
  CHECK_FALSE(at.is_unique);
  CHECK(at.beta_star == at.beta_r_minus);
  const Solution after = solve(SymmetricParams::checked(1.0, 0.0, 0.55, jump->a_jump + 1e-3));
  CHECK(after.regime == Regime::RiskWar);
  CHECK(after.is_unique);
}

TEST_CASE("single candidate reports an infinite gap") {
  const Solution sol = solve(SymmetricParams::checked(-1.0, 0.0, 0.7, 0.3));
  CHECK(sol.candidates.size() == 1);
  CHECK(std::isinf(sol.near_tie_gap));
  CHECK(sol.is_unique);
}

TEST_CASE("high-uncertainty regime") {
  testing_support::Draws d(48);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 40; ++i) {
    const SymmetricParams sp = d.any_symmetric();
    if (peace_interval(sp.base()).exists) continue;
    ++checked;
    const Solution sol = solve(sp);
    CHECK(sol.regime == Regime::HighUncertainty);
    const ThresholdSet s = threshold_set(sp.base());
    const int n = 100000;
    const auto [b, u] = oracle::grid_argmax([&](double x) { return gov(sp, x); }, s.beta_g_minus,
                                            s.beta_r_plus, n);
    CHECK(gov(sp, sol.beta_star) >= u - 1e-12);
    CHECK(sol.beta_star >= s.beta_r_minus);
  }
  CHECK(checked == 40);
}

TEST_CASE("switch condition") {
  SUBCASE("no real roots below the discriminant bound") {
    const SwitchCondition c = switch_condition(SymmetricParams::checked(1.0, 0, 0.6, 0.5));
    CHECK_FALSE(c.real_roots);
    CHECK_FALSE(c.derivative_positive);
  }
  SUBCASE("x-band brackets the arms gap exactly when the slope is positive") {
    testing_support::Draws d(49);
    for (int i = 0; i < 500; ++i) {
      const SymmetricParams sp = d.any_symmetric();
      const SwitchCondition c = switch_condition(sp);
      if (!c.real_roots) continue;
      const bool inside = sp.x() > c.x_lo && sp.x() < c.x_hi;
      CHECK(inside == c.derivative_positive);
    }
  }
  SUBCASE("flag matches the residual sign at beta_r_minus") {
    testing_support::Draws d(50);
    for (int i = 0; i < 500; ++i) {
      const SymmetricParams sp = d.any_symmetric();
      const double g = foc_residual(sp, threshold_set(sp.base()).beta_r_minus).value;
      if (std::abs(g) < 1e-9) continue;
      CHECK(switch_condition(sp).derivative_positive == (g > 0));
    }
  }
  SUBCASE("positive flag implies the government risks war") {
    testing_support::Draws d(51);
    int positives = 0;
    for (int i = 0; i < 500; ++i) {
      const SymmetricParams sp = d.low_regime();
      if (!switch_condition(sp).derivative_positive) continue;
      ++positives;
      CHECK(solve(sp).regime == Regime::RiskWar);
    }
    CHECK(positives > 20);
  }
  SUBCASE("alpha 0.9, x 0, half-width 1 against a central difference") {
    const SymmetricParams sp = SymmetricParams::checked(0, 0, 0.9, 1.0);
    const double b = threshold_set(sp.base()).beta_r_minus;
    const double fd = oracle::central_difference([&](double x) { return gov(sp, x); }, b, 1e-7);
    CHECK(switch_condition(sp).derivative_positive == (fd > 0));
  }
  SUBCASE("low-regime points against a one-sided difference") {
    for (double a : {0.1, 0.2, 0.25, 0.26, 0.28}) {
      const SymmetricParams sp = SymmetricParams::checked(1.0, 0, 0.9, a);
      const double b = threshold_set(sp.base()).beta_r_minus;
      const double fd = (gov(sp, b + 1e-8) - gov(sp, b)) / 1e-8;
      CHECK(switch_condition(sp).derivative_positive == (fd > 0));
    }
  }
}

TEST_CASE("jump detection") {
  auto grid_to = [](double hi) {
    std::vector<double> g;
    for (int i = 0; i < 400; ++i) g.push_back(1e-4 + (hi - 1e-4) * i / 399.0);
    return g;
  };
  SUBCASE("one jump at alpha 0.55, x 1") {
    const auto j = detect_jump(0.55, 1.0, grid_to(a_crit(0.55, 1.0).half_width()));
    REQUIRE(j);
    CHECK(j->tie_gap < 1e-8);
    CHECK(j->a_jump >= j->bracket_lo);
    CHECK(j->a_jump <= j->bracket_hi);
    CHECK(j->beta_after - j->beta_before > 0.01);
    // Independent check of the tie: two candidates with equal payoff.
    const SymmetricParams sp = SymmetricParams::checked(1.0, 0, 0.55, j->a_jump);
    CHECK(std::abs(gov(sp, j->beta_before) - gov(sp, j->beta_after)) < 1e-8);
  }
  SUBCASE("no jump when out-armed") {
    for (double alpha : {0.55, 0.7, 0.9}) {
      CHECK_FALSE(detect_jump(alpha, -1.0, grid_to(a_crit(alpha, -1.0).half_width())));
    }
  }
  SUBCASE("continuous switch is not a jump") {
    CHECK_FALSE(detect_jump(0.9, 1.0, grid_to(a_crit(0.9, 1.0).half_width())));
    CHECK_FALSE(detect_jump(0.7, 1.0, grid_to(a_crit(0.7, 1.0).half_width())));
  }
}

TEST_CASE("interior optimum rises with uncertainty") {
  for (auto [alpha, x] : {std::pair{0.9, 1.0}, std::pair{0.7, 1.0}, std::pair{0.55, 1.0}}) {
    const double crit = a_crit(alpha, x).half_width();
    double prev_beta = -1.0;
    bool prev_war = false;
    for (int k = 1; k <= 200; ++k) {
      const Solution sol = solve(SymmetricParams::checked(x, 0, alpha, crit * k / 200.0));
      const bool war = sol.regime == Regime::RiskWar;
      if (war && prev_war) CHECK(sol.beta_star >= prev_beta - 1e-9);
      prev_war = war;
      prev_beta = sol.beta_star;
    }
  }
}
