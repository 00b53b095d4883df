#pragma once

// Monte Carlo play of the full game, used to cross-check the analytic payoffs.
//
// Random numbers come from xoshiro256** (Blackman and Vigna). Draws are split
// into chunks of kChunkDraws; chunk k runs its own generator whose state is
// four consecutive SplitMix64 outputs started from
// splitmix64_mix(seed + splitmix64_mix(k)). A uniform on [0,1) is
// (next() >> 11) * 2^-53. Each draw consumes one uniform for the shock and,
// when someone fights, one more for the winner.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bargain/model.h"

namespace bargain {

inline constexpr std::uint64_t kChunkDraws = 1u << 16;

std::uint64_t splitmix64_mix(std::uint64_t z);

class Xoshiro256ss {
 public:
  using result_type = std::uint64_t;
  explicit Xoshiro256ss(std::uint64_t seed);
  static Xoshiro256ss from_state(const std::array<std::uint64_t, 4>& state);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  double uniform();  // [0, 1)

 private:
  Xoshiro256ss() = default;
  std::array<std::uint64_t, 4> s_{};
};

// Generator for chunk `chunk` of a run seeded with `seed`.
Xoshiro256ss chunk_generator(std::uint64_t seed, std::uint64_t chunk);

struct SimConfig {
  GameParams params;
  double beta;
  std::uint64_t draws;
  std::uint64_t seed;
  unsigned threads = 0;  // 0 picks the hardware concurrency; never changes results
};

struct SimEstimate {
  double gov_mean;
  double reb_mean;
  double war_freq;
  double gov_se;  // sample sd / sqrt(draws); +inf with fewer than two draws
  double reb_se;
  double war_se;
  std::uint64_t draws;
};

// Throws InvalidConfig when draws == 0.
SimEstimate simulate(const SimConfig& config);

struct Comparison {
  std::string quantity;
  double analytic;
  double simulated;
  double std_err;
  double z;  // (analytic - simulated) / std_err
  bool flagged;
};

inline constexpr double kFlagThreshold = 4.0;

// Flags |z| > 4. A zero standard error flags any difference above 1e-12; an
// infinite one never flags.
Comparison compare(std::string quantity, double analytic, double simulated, double std_err);

struct ValidationReport {
  std::vector<Comparison> rows;
  bool any_flag() const;
};

// Government payoff, rebel payoff and war probability against simulation.
ValidationReport validate_analytics(const GameParams& params, double beta, std::uint64_t draws,
                                    std::uint64_t seed);

struct BatteryCase {
  GameParams params;
  double beta;
};

// Random (params, beta) pairs over asymmetric supports, with beta spread
// across every payoff branch. Deterministic in the seed.
std::vector<BatteryCase> verify_battery(std::size_t count, std::uint64_t seed);

}  // namespace bargain
