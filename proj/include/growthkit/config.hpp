#pragma once

// Flat key=value experiment configs, e.g.
//
//   kind=subdirect
//   phi=1,0
//   degree=3
//   perm.a=2,1,3
//   perm.b=1,3,2
//
// direct_product oracles nest their factors under left.* and right.*.
// dump() writes the canonical form: sorted keys, whitespace removed.

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "growthkit/quotient.hpp"
#include "growthkit/words.hpp"

namespace growthkit {

class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ExperimentConfig {
 public:
  static constexpr std::string_view kParamKeys[] = {"budget", "k",       "length_samples", "max_len", "max_states",
                                                    "n_max",  "seed",    "t",              "threads"};

  static ExperimentConfig parse(std::string_view text) {
    ExperimentConfig c;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      if (strip(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw config_error("config line " + std::to_string(lineno) + ": expected key=value");
      c.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return c;
  }

  static ExperimentConfig load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
  }

  void set(std::string_view key, std::string_view value) {
    std::string k = strip(key);
    if (k.empty()) throw config_error("config: empty key");
    if (!known_key(k)) throw config_error("config: unknown key '" + k + "'");
    std::string v;
    for (char ch : value)
      if (!std::isspace(static_cast<unsigned char>(ch))) v += ch;
    entries_[k] = v;
  }

  std::optional<std::string> get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<std::int64_t> get_int(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    return to_int(key, *v);
  }

  std::vector<std::int64_t> get_list(const std::string& key) const {
    auto v = get(key);
    if (!v) throw config_error("config: missing key '" + key + "'");
    std::vector<std::int64_t> out;
    std::string item;
    std::istringstream in(*v);
    while (std::getline(in, item, ',')) out.push_back(to_int(key, item));
    if (out.empty()) throw config_error("config: key '" + key + "' is empty");
    return out;
  }

  /// Entries under `prefix.`, with the prefix removed.
  ExperimentConfig subtree(const std::string& prefix) const {
    ExperimentConfig c;
    const std::string p = prefix + ".";
    for (const auto& [k, v] : entries_)
      if (k.rfind(p, 0) == 0) c.entries_[k.substr(p.size())] = v;
    return c;
  }

  std::string dump() const {
    std::string s;
    for (const auto& [k, v] : entries_) s += k + "=" + v + "\n";
    return s;
  }

  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }

 private:
  static std::string strip(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
  }

  static bool known_key(const std::string& k) {
    for (auto p : kParamKeys)
      if (k == p) return true;
    return oracle_key(k);
  }

  static bool oracle_key(const std::string& k) {
    if (k == "kind" || k == "m" || k == "phi" || k == "degree") return true;
    if (k.size() == 6 && k.rfind("perm.", 0) == 0 && std::islower(static_cast<unsigned char>(k[5]))) return true;
    for (const char* side : {"left.", "right."})
      if (k.rfind(side, 0) == 0) return oracle_key(k.substr(std::string_view(side).size()));
    return false;
  }

  static std::int64_t to_int(const std::string& key, const std::string& v) {
    try {
      std::size_t used = 0;
      const long long r = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw config_error("config: key '" + key + "' expects integers, got '" + v + "'");
    }
  }

  std::map<std::string, std::string> entries_;
};

inline std::optional<PhiSpec> config_phi(const ExperimentConfig& c) {
  if (!c.has("phi")) return std::nullopt;
  return PhiSpec(c.get_list("phi"));
}

namespace detail {

inline int config_rank(const ExperimentConfig& c, std::optional<int> implied) {
  const auto m = c.get_int("m");
  if (m && implied && *m != *implied)
    throw config_error("config: m=" + std::to_string(*m) + " conflicts with rank " + std::to_string(*implied));
  if (m) return static_cast<int>(*m);
  if (implied) return *implied;
  throw config_error("config: missing key 'm'");
}

inline GroupOracle config_perm(const ExperimentConfig& c, int m) {
  const auto degree = c.get_int("degree");
  if (!degree) throw config_error("config: missing key 'degree'");
  if (m > 26) throw config_error("config: permutation generators are named perm.a .. perm.z");
  std::vector<std::vector<int>> perms;
  for (int i = 0; i < m; ++i) {
    const std::string key = std::string("perm.") + static_cast<char>('a' + i);
    std::vector<int> p;
    for (auto v : c.get_list(key)) p.push_back(static_cast<int>(v));
    perms.push_back(std::move(p));
  }
  for (const auto& [k, v] : c.entries())
    if (k.rfind("perm.", 0) == 0 && k[5] - 'a' >= m)
      throw config_error("config: " + k + " names a generator beyond rank " + std::to_string(m));
  return make_finite_perm(m, perms, static_cast<std::size_t>(*degree));
}

}  // namespace detail

/// Builds the oracle described by the `kind` entry and its parameters.
inline GroupOracle build_oracle(const ExperimentConfig& c) {
  const auto kind = c.get("kind");
  if (!kind) throw config_error("config: missing key 'kind'");
  try {
    if (*kind == "free_abelian") return make_free_abelian(detail::config_rank(c, std::nullopt));
    if (*kind == "nilpotent_class2") return make_nilpotent_class2(detail::config_rank(c, std::nullopt));
    if (*kind == "finite_perm") {
      int perms = 0;
      for (const auto& [k, v] : c.entries()) perms += k.rfind("perm.", 0) == 0;
      return detail::config_perm(c, detail::config_rank(c, perms > 0 ? std::optional<int>(perms) : std::nullopt));
    }
    if (*kind == "subdirect") {
      const auto phi = config_phi(c);
      if (!phi) throw config_error("config: subdirect requires 'phi'");
      const int m = detail::config_rank(c, phi->rank());
      return make_subdirect(*phi, detail::config_perm(c, m));
    }
    if (*kind == "direct_product") {
      auto left = build_oracle(c.subtree("left"));
      auto right = build_oracle(c.subtree("right"));
      return make_direct_product(left, right);
    }
  } catch (const config_error&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  throw config_error("config: unknown kind '" + *kind + "'");
}

}  // namespace growthkit
