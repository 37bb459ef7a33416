#pragma once

// CSV and JSON renderings of reports. Field order is fixed and reals are
// rounded to 10 significant digits so output is byte-stable.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "growthkit/bounds.hpp"
#include "growthkit/girth.hpp"
#include "growthkit/growth.hpp"

namespace growthkit {

using Json = nlohmann::ordered_json;

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline double round_real(double v) { return std::strtod(format_real(v).c_str(), nullptr); }

inline Json optional_real(const std::optional<double>& v) { return v ? Json(round_real(*v)) : Json(nullptr); }

inline std::string growth_to_csv(const GrowthReport& r) {
  std::string s = "n,sphere,ball,rate_root,rate_ratio\n";
  for (std::size_t n = 0; n <= r.achieved; ++n) {
    s += std::to_string(n) + "," + std::to_string(r.sphere[n]) + "," + std::to_string(r.ball[n]) + ",";
    if (auto v = r.rate_root(n)) s += format_real(*v);
    s += ",";
    if (auto v = r.rate_ratio(n)) s += format_real(*v);
    s += "\n";
  }
  return s;
}

inline Json growth_to_json(const GrowthReport& r) {
  Json j;
  j["n_max"] = r.n_max;
  j["achieved"] = r.achieved;
  j["complete"] = r.complete;
  j["sphere_sizes"] = r.sphere;
  j["ball_sizes"] = r.ball;
  Json root = Json::array(), ratio = Json::array();
  for (std::size_t n = 0; n <= r.achieved; ++n) {
    root.push_back(optional_real(r.rate_root(n)));
    ratio.push_back(optional_real(r.rate_ratio(n)));
  }
  j["rate_root"] = root;
  j["rate_ratio"] = ratio;
  return j;
}

inline Json rho_to_json(const RhoResult& r) {
  Json j;
  if (const auto* c = std::get_if<RhoCertificate>(&r)) {
    j["found"] = true;
    j["rho"] = c->rho;
    j["witness"] = format_word(c->witness);
    j["exhaustive_up_to"] = c->exhaustive_up_to;
  } else {
    j["found"] = false;
    j["max_len"] = std::get<RhoNotFound>(r).max_len;
    j["rho_at_least"] = rho_lower_bound(r);
  }
  return j;
}

inline std::string rho_to_text(const RhoResult& r) {
  if (const auto* c = std::get_if<RhoCertificate>(&r))
    return "rho=" + std::to_string(c->rho) + " witness=" + format_word(c->witness) +
           " exhaustive_up_to=" + std::to_string(c->exhaustive_up_to) + "\n";
  const auto& nf = std::get<RhoNotFound>(r);
  return "rho>" + std::to_string(nf.max_len) + " not_found max_len=" + std::to_string(nf.max_len) + "\n";
}

inline Json bound_to_json(const BoundReport& b) {
  Json j;
  j["m"] = b.m;
  j["C"] = b.C;
  j["rho"] = b.rho;
  j["k_used"] = b.k_used ? Json(*b.k_used) : Json(nullptr);
  j["lemma2_ok"] = b.lemma2_ok;
  j["thm1_ok"] = b.thm1_ok;
  j["lower_bound"] = optional_real(b.lower_bound);
  j["dk_bound"] = b.dk_bound ? Json(*b.dk_bound) : Json(nullptr);
  j["chain_k"] = b.chain_k;
  j["vacuous"] = b.vacuous();
  return j;
}

inline Json saw_to_json(const SawReport& r) {
  Json j;
  j["k"] = r.k;
  j["t"] = r.t;
  j["d_k"] = r.d_k;
  j["words_checked"] = r.words_checked;
  j["sampled"] = r.sampled;
  j["seed"] = r.seed;
  j["precondition"] = precondition_name(r.precondition);
  j["rho_threshold"] = r.threshold;
  j["rho_at_least"] = r.rho_lower ? Json(*r.rho_lower) : Json(nullptr);
  j["violation_count"] = r.violation_count;
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back(Json{{"word", format_word(x.word)}, {"first_repeat", x.first_repeat}});
  j["violations"] = v;
  j["violations_truncated"] = r.violation_count > r.violations.size();
  return j;
}

inline Json distinct_to_json(const DistinctnessReport& r) {
  Json j;
  j["k"] = r.k;
  j["t"] = r.t;
  j["expected"] = r.expected;
  j["observed"] = r.observed;
  j["precondition"] = precondition_name(r.precondition);
  j["lengths_checked"] = r.lengths_checked;
  j["lengths_equal_kt"] = r.lengths_equal_kt;
  return j;
}

}  // namespace growthkit
