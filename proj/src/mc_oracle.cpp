#include "bargain/mc_oracle.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "bargain/outcomes.h"
#include "bargain/payoff.h"
#include "bargain/stage2.h"

namespace bargain {

namespace {

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) comp += (sum - t) + v;
    else comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Sums of (v - shift) and (v - shift)^2; the shift is the peace payoff so
// that a run without war has exactly zero spread.
struct Moments {
  CompensatedSum s1;
  CompensatedSum s2;

  void add(double d) {
    s1.add(d);
    s2.add(d * d);
  }
  void merge(const Moments& o) {
    s1.add(o.s1.value());
    s2.add(o.s2.value());
  }
};

struct ChunkTotals {
  Moments gov;
  Moments reb;
  Moments war;
};

void mean_and_se(const Moments& m, double shift, double n, double& mean, double& se) {
  const double s1 = m.s1.value();
  mean = shift + s1 / n;
  if (n < 2.0) {
    se = std::numeric_limits<double>::infinity();
    return;
  }
  const double var = std::max(0.0, (m.s2.value() - s1 * s1 / n) / (n - 1.0));
  se = std::sqrt(var / n);
}

}  // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) {
    word = splitmix64_mix(x);
    x += 0x9e3779b97f4a7c15ULL;
  }
}

Xoshiro256ss Xoshiro256ss::from_state(const std::array<std::uint64_t, 4>& state) {
  Xoshiro256ss g;
  g.s_ = state;
  return g;
}

Xoshiro256ss::result_type Xoshiro256ss::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256ss::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

Xoshiro256ss chunk_generator(std::uint64_t seed, std::uint64_t chunk) {
  return Xoshiro256ss(splitmix64_mix(seed + splitmix64_mix(chunk)));
}

SimEstimate simulate(const SimConfig& cfg) {
  if (cfg.draws == 0) throw Error(ErrorCode::InvalidConfig, "draws must be at least 1");
  const GameParams& p = cfg.params;
  const FightThresholds thresholds = fight_thresholds(p, cfg.beta);
  const double beta = cfg.beta;
  const double alpha = p.alpha();
  const double gov_shift = beta;
  const double reb_shift = 1.0 - beta;

  const std::uint64_t chunks = (cfg.draws + kChunkDraws - 1) / kChunkDraws;
  std::vector<ChunkTotals> totals(chunks);
  auto run_chunk = [&](std::uint64_t c) {
    Xoshiro256ss rng = chunk_generator(cfg.seed, c);
    const std::uint64_t begin = c * kChunkDraws;
    const std::uint64_t end = std::min(cfg.draws, begin + kChunkDraws);
    ChunkTotals& t = totals[c];
    for (std::uint64_t i = begin; i < end; ++i) {
      const double eps = p.a_lo() + p.width() * rng.uniform();
      double gov = beta;
      double reb = 1.0 - beta;
      double war = 0.0;
      if (best_response(thresholds, eps).war()) {
        war = 1.0;
        const bool gov_wins = rng.uniform() < win_prob(p, eps).p_g;
        gov = gov_wins ? alpha : 0.0;
        reb = gov_wins ? 0.0 : alpha;
      }
      t.gov.add(gov - gov_shift);
      t.reb.add(reb - reb_shift);
      t.war.add(war);
    }
  };

  unsigned workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks)));
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();

  ChunkTotals all;
  for (const ChunkTotals& t : totals) {
    all.gov.merge(t.gov);
    all.reb.merge(t.reb);
    all.war.merge(t.war);
  }
  const double n = static_cast<double>(cfg.draws);
  SimEstimate est{};
  est.draws = cfg.draws;
  mean_and_se(all.gov, gov_shift, n, est.gov_mean, est.gov_se);
  mean_and_se(all.reb, reb_shift, n, est.reb_mean, est.reb_se);
  mean_and_se(all.war, 0.0, n, est.war_freq, est.war_se);
  return est;
}

Comparison compare(std::string quantity, double analytic, double simulated, double std_err) {
  Comparison c{std::move(quantity), analytic, simulated, std_err, 0.0, false};
  const double delta = analytic - simulated;
  if (std::isinf(std_err)) return c;
  if (std_err == 0.0) {
    c.flagged = std::abs(delta) > 1e-12;
    c.z = c.flagged ? std::copysign(std::numeric_limits<double>::infinity(), delta) : 0.0;
    return c;
  }
  c.z = delta / std_err;
  c.flagged = !(std::abs(c.z) <= kFlagThreshold);
  return c;
}

bool ValidationReport::any_flag() const {
  return std::any_of(rows.begin(), rows.end(), [](const Comparison& c) { return c.flagged; });
}

ValidationReport validate_analytics(const GameParams& params, double beta, std::uint64_t draws,
                                    std::uint64_t seed) {
  const SimEstimate est = simulate({params, beta, draws, seed});
  ValidationReport r;
  r.rows.push_back(compare("gov_payoff", gov_expected(params, beta).total, est.gov_mean, est.gov_se));
  r.rows.push_back(compare("reb_payoff", reb_expected(params, beta).total, est.reb_mean, est.reb_se));
  r.rows.push_back(compare("prob_war", war_probability(params, beta), est.war_freq, est.war_se));
  return r;
}

std::vector<BatteryCase> verify_battery(std::size_t count, std::uint64_t seed) {
  Xoshiro256ss rng(seed);
  auto uni = [&](double lo, double hi) { return lo + (hi - lo) * rng.uniform(); };
  std::vector<BatteryCase> out;
  out.reserve(count);
  while (out.size() < count) {
    const double alpha = uni(0.05, 0.95);
    const double x = uni(-3.0, 3.0);
    const double a_lo = uni(-3.0, 0.5);
    const double a_hi = a_lo + uni(0.05, 4.0);
    const GameParams p = GameParams::checked({x, 0.0, alpha, a_lo, a_hi});
    const ThresholdSet s = threshold_set(p);
    const double lo = std::max(0.0, s.beta_g_minus - 0.05);
    const double hi = std::min(1.0, s.beta_r_plus + 0.05);
    out.push_back({p, uni(lo, hi)});
  }
  return out;
}

}  // namespace bargain
