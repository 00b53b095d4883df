#include "bargain/payoff.h"

#include <algorithm>
#include <cmath>

namespace bargain {

namespace {

// Antiderivative of p_G(e) in the shock e.
double antiderivative(double x, double e) { return e - softplus(e - x); }

double raw_mass(const GameParams& p, double lo, double hi) {
  return antiderivative(p.x(), hi) - antiderivative(p.x(), lo);
}

double gov_threshold(const GameParams& p, double beta) {
  return fight_thresholds(p, beta).t_g.value();
}

double reb_threshold(const GameParams& p, double beta) {
  return fight_thresholds(p, beta).t_r.value();
}

// Fight region(s) of a branch as [a_lo, low_end] and [high_start, a_hi].
struct FightRegion {
  double low_end;
  double high_start;
};

FightRegion fight_region(const GameParams& p, Branch branch, double beta) {
  switch (branch) {
    case Branch::AlwaysWarLow:
    case Branch::AlwaysWarHigh: return {p.a_hi(), p.a_hi()};
    case Branch::GovMayFight: return {gov_threshold(p, beta), p.a_hi()};
    case Branch::GuaranteedPeace: return {p.a_lo(), p.a_hi()};
    case Branch::RebMayFight: return {p.a_lo(), reb_threshold(p, beta)};
    case Branch::BothMayFight: return {gov_threshold(p, beta), reb_threshold(p, beta)};
  }
  return {p.a_lo(), p.a_hi()};
}

}  // namespace

std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::AlwaysWarLow: return "AlwaysWarLow";
    case Branch::GovMayFight: return "GovMayFight";
    case Branch::GuaranteedPeace: return "GuaranteedPeace";
    case Branch::RebMayFight: return "RebMayFight";
    case Branch::AlwaysWarHigh: return "AlwaysWarHigh";
    case Branch::BothMayFight: return "BothMayFight";
  }
  return "Unknown";
}

double partial_win_mass(const GameParams& params, double lo, double hi) {
  if (!(lo <= hi) || lo < params.a_lo() || hi > params.a_hi()) {
    throw Error(ErrorCode::BoundsOutOfSupport, "integration bounds must satisfy a_lo <= lo <= hi <= a_hi");
  }
  return std::clamp(raw_mass(params, lo, hi), 0.0, hi - lo);
}

ExpectedWinProb expected_win_prob(const GameParams& params) {
  return {partial_win_mass(params, params.a_lo(), params.a_hi()) / params.width()};
}

Branch classify(const ThresholdSet& s, bool peace_exists, double beta) {
  if (beta < s.beta_g_minus) return Branch::AlwaysWarLow;
  if (beta > s.beta_r_plus) return Branch::AlwaysWarHigh;
  if (peace_exists) {
    if (beta < s.beta_g_plus) return Branch::GovMayFight;
    if (beta <= s.beta_r_minus) return Branch::GuaranteedPeace;
    return Branch::RebMayFight;
  }
  if (beta <= s.beta_r_minus) return Branch::GovMayFight;
  if (beta < s.beta_g_plus) return Branch::BothMayFight;
  return Branch::RebMayFight;
}

PayoffBreakdown gov_branch_value(const GameParams& p, Branch branch, double beta) {
  const double w = p.width();
  const double alpha = p.alpha();
  if (branch == Branch::GuaranteedPeace) return {beta, branch, 0.0, beta, 0.0};
  if (branch == Branch::AlwaysWarLow || branch == Branch::AlwaysWarHigh) {
    const double war = alpha * expected_win_prob(p).p_tilde_g;
    return {war, branch, war, 0.0, 1.0};
  }
  const FightRegion r = fight_region(p, branch, beta);
  double mass = 0.0;
  double len = 0.0;
  if (branch != Branch::RebMayFight) {
    mass += raw_mass(p, p.a_lo(), r.low_end);
    len += r.low_end - p.a_lo();
  }
  if (branch != Branch::GovMayFight) {
    mass += raw_mass(p, r.high_start, p.a_hi());
    len += p.a_hi() - r.high_start;
  }
  const double war = alpha / w * mass;
  const double peace = beta * (r.high_start - r.low_end) / w;
  return {war + peace, branch, war, peace, len / w};
}

PayoffBreakdown reb_branch_value(const GameParams& p, Branch branch, double beta) {
  const double w = p.width();
  const double alpha = p.alpha();
  if (branch == Branch::GuaranteedPeace) return {1.0 - beta, branch, 0.0, 1.0 - beta, 0.0};
  if (branch == Branch::AlwaysWarLow || branch == Branch::AlwaysWarHigh) {
    const double war = alpha * (1.0 - expected_win_prob(p).p_tilde_g);
    return {war, branch, war, 0.0, 1.0};
  }
  const FightRegion r = fight_region(p, branch, beta);
  double lost = 0.0;  // rebels win where the government does not
  double len = 0.0;
  if (branch != Branch::RebMayFight) {
    const double l = r.low_end - p.a_lo();
    lost += l - raw_mass(p, p.a_lo(), r.low_end);
    len += l;
  }
  if (branch != Branch::GovMayFight) {
    const double l = p.a_hi() - r.high_start;
    lost += l - raw_mass(p, r.high_start, p.a_hi());
    len += l;
  }
  const double war = alpha / w * lost;
  const double peace = (1.0 - beta) * (r.high_start - r.low_end) / w;
  return {war + peace, branch, war, peace, len / w};
}

PayoffBreakdown gov_expected(const GameParams& params, double beta) {
  const PeaceInterval pi = peace_interval(params);
  return gov_branch_value(params, classify(threshold_set(params), pi.exists, beta), beta);
}

PayoffBreakdown reb_expected(const GameParams& params, double beta) {
  const PeaceInterval pi = peace_interval(params);
  return reb_branch_value(params, classify(threshold_set(params), pi.exists, beta), beta);
}

PayoffBreakdown gov_payoff(const SymmetricParams& params, double beta) {
  if (!peace_interval(params.base()).exists) {
    throw Error(ErrorCode::RegimeMismatch, "peace interval is empty; use gov_payoff_high");
  }
  return gov_expected(params.base(), beta);
}

PayoffBreakdown gov_payoff_high(const SymmetricParams& params, double beta) {
  if (peace_interval(params.base()).exists) {
    throw Error(ErrorCode::RegimeMismatch, "peace interval exists; use gov_payoff");
  }
  return gov_expected(params.base(), beta);
}

PayoffBreakdown reb_payoff(const SymmetricParams& params, double beta) {
  return reb_expected(params.base(), beta);
}

}  // namespace bargain
