#include "bargain/config.h"

#include <array>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <istream>
#include <string_view>

namespace bargain {

namespace {

constexpr std::array<std::string_view, 7> kKeys = {"y_g", "y_r", "x", "alpha", "a_lo", "a_hi",
                                                   "a_half"};
constexpr std::array<std::string_view, 3> kArms = {"y_g", "y_r", "x"};
constexpr std::array<std::string_view, 3> kSupport = {"a_lo", "a_hi", "a_half"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <std::size_t N>
bool any_of_keys(const ParamSource& s, const std::array<std::string_view, N>& keys) {
  for (auto k : keys) {
    if (s.has(std::string(k))) return true;
  }
  return false;
}

double required(const ParamSource& s, const char* key) {
  const auto v = s.get(key);
  if (!v) throw Error(ErrorCode::InvalidConfig, std::string("missing parameter ") + key);
  return *v;
}

}  // namespace

bool is_param_key(const std::string& key) {
  for (auto k : kKeys) {
    if (k == key) return true;
  }
  return false;
}

void ParamSource::set(const std::string& key, double value) {
  if (!is_param_key(key)) throw Error(ErrorCode::InvalidConfig, "unknown key " + key);
  values_[key] = value;
}

void ParamSource::set(const std::string& key, const std::string& text) {
  if (!is_param_key(key)) throw Error(ErrorCode::InvalidConfig, "unknown key " + key);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::InvalidConfig, "not a number for " + key + ": " + text);
  }
  values_[key] = v;
}

std::optional<double> ParamSource::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

ParamSource ParamSource::overlay(const ParamSource& file, const ParamSource& flags) {
  ParamSource out;
  const bool flag_arms = any_of_keys(flags, kArms);
  const bool flag_support = any_of_keys(flags, kSupport);
  for (const auto& [k, v] : file.values_) {
    bool arms = false, support = false;
    for (auto a : kArms) arms = arms || a == k;
    for (auto a : kSupport) support = support || a == k;
    if ((arms && flag_arms) || (support && flag_support)) continue;
    out.values_[k] = v;
  }
  for (const auto& [k, v] : flags.values_) out.values_[k] = v;
  return out;
}

double ParamSource::alpha() const { return required(*this, "alpha"); }

double ParamSource::x() const {
  const double y_r = get("y_r").value_or(0.0);
  if (const auto x = get("x")) return *x;
  return get("y_g").value_or(0.0) - y_r;
}

GameParams ParamSource::game_params() const {
  const double y_r = get("y_r").value_or(0.0);
  const double y_g = y_r + x();
  double lo = 0.0, hi = 0.0;
  if (const auto h = get("a_half")) {
    if (has("a_lo") || has("a_hi")) {
      throw Error(ErrorCode::InvalidConfig, "give either a_half or a_lo/a_hi, not both");
    }
    lo = -*h;
    hi = *h;
  } else {
    lo = required(*this, "a_lo");
    hi = required(*this, "a_hi");
  }
  return GameParams::checked({y_g, y_r, alpha(), lo, hi});
}

SymmetricParams ParamSource::symmetric_params() const { return SymmetricParams::from(game_params()); }

ParamSource parse_config(std::istream& in) {
  ParamSource out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(number) + ": expected key=value");
    }
    out.set(trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)));
  }
  return out;
}

ParamSource parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Io, path + ": " + std::strerror(errno));
  return parse_config(f);
}

}  // namespace bargain
