#pragma once

// Parameter input for the command line: key=value files plus flag overrides.
//
// Recognised keys: y_g, y_r, x, alpha, a_lo, a_hi, a_half. Blank lines and
// text after '#' are ignored. x sets y_g = y_r + x. a_half sets a symmetric
// support [-a_half, a_half].

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "bargain/model.h"

namespace bargain {

class ParamSource {
 public:
  // Throws InvalidConfig on unknown keys or non-numeric values.
  void set(const std::string& key, const std::string& text);
  void set(const std::string& key, double value);

  std::optional<double> get(const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  // Flags replace file values group by group: giving any of x/y_g/y_r drops
  // the file's arms, giving any of a_half/a_lo/a_hi drops the file's support.
  static ParamSource overlay(const ParamSource& file, const ParamSource& flags);

  double alpha() const;  // InvalidConfig when absent
  double x() const;      // y_g - y_r with missing entries read as 0
  GameParams game_params() const;
  SymmetricParams symmetric_params() const;

 private:
  std::map<std::string, double> values_;
};

bool is_param_key(const std::string& key);

ParamSource parse_config(std::istream& in);
// Throws Io when the file cannot be opened.
ParamSource parse_config_file(const std::string& path);

}  // namespace bargain
