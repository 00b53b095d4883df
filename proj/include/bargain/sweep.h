#pragma once

// Comparative statics over one parameter of a symmetric game.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bargain/optimizer.h"

namespace bargain {

enum class SweepParam { AHalf, Alpha, X };
enum class Spacing { Linear, Log };

std::string_view sweep_param_name(SweepParam p);
std::optional<SweepParam> parse_sweep_param(std::string_view s);
std::optional<Spacing> parse_spacing(std::string_view s);

struct SweepBase {
  double y_g = 0.0;
  double y_r = 0.0;
  double alpha = 0.7;
  double a_half = 0.5;
};

struct SweepSpec {
  SweepBase base;
  SweepParam param = SweepParam::AHalf;
  double lo = 1e-4;
  double hi = 1.0;
  int count = 400;
  Spacing spacing = Spacing::Linear;
  // Only for AHalf sweeps: hi becomes min(hi, a_crit).
  bool auto_truncate_at_acrit = false;
  // Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

// Default half-width sweep: 400 points on [1e-4, a_crit].
SweepSpec default_a_sweep(const SweepBase& base);

struct SweepRow {
  double value;
  bool ok;
  std::string error;  // error name when !ok
  double beta_star;
  Regime regime;
  double beta_r_minus;
  double beta_g_plus;
  double prob_war;
  double welfare;
  double gov_payoff;
  double reb_payoff;
  bool is_unique;
};

struct SweepResult {
  SweepParam param;
  std::vector<SweepRow> rows;
  // First parameter value where the regime leaves GuaranteePeace.
  std::optional<double> switch_point;
  // Where the regime returns to GuaranteePeace after a switch, if it does.
  std::optional<double> return_point;
  std::optional<JumpPoint> jump_point;
};

// Grid values after validation and truncation. Throws InvalidSweep.
std::vector<double> sweep_grid(const SweepSpec& spec);

SweepResult run_sweep(const SweepSpec& spec);

void emit_csv(const SweepResult& result, std::ostream& out);
// Throws Io with the system error text when the file cannot be written.
void emit_csv(const SweepResult& result, const std::string& path);

void emit_annotations(const SweepResult& result, std::ostream& out);
void emit_annotations(const SweepResult& result, const std::string& path);

}  // namespace bargain
