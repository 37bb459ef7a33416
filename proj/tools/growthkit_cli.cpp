// growthkit: command-line driver for good-word enumeration, girth search,
// ball growth, self-avoidance and distinctness experiments, and the
// closed-form growth bound.
//
// Exit codes: 0 success, 2 bad input, 3 not found, 4 budget, 5 invariant falsified.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "growthkit/bounds.hpp"
#include "growthkit/config.hpp"
#include "growthkit/girth.hpp"
#include "growthkit/growth.hpp"
#include "growthkit/report_io.hpp"
#include "growthkit/words.hpp"

namespace gk = growthkit;

namespace {

enum Exit : int { kOk = 0, kBadInput = 2, kNotFound = 3, kBudget = 4, kFalsified = 5 };

struct Output {
  std::string path;

  void write(const std::string& s) const {
    if (path.empty()) {
      std::cout << s;
      std::cout.flush();
      return;
    }
    std::ofstream f(path);
    if (!f) throw gk::config_error("cannot write '" + path + "'");
    f << s;
  }
};

std::string json_text(const gk::Json& j) { return j.dump(2) + "\n"; }

// Oracle and parameter options shared by config-driven subcommands.
struct ConfigOptions {
  std::string file;
  std::vector<std::string> overrides;
  bool dump = false;

  void attach(CLI::App* app) {
    app->add_option("--config", file, "flat key=value config file");
    app->add_option("--set", overrides, "override a config entry, key=value (repeatable)");
    app->add_flag("--dump-config", dump, "print the canonical config and exit");
  }

  gk::ExperimentConfig load() const {
    gk::ExperimentConfig c = file.empty() ? gk::ExperimentConfig{} : gk::ExperimentConfig::load(file);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw gk::config_error("--set expects key=value, got '" + kv + "'");
      c.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return c;
  }
};

// Command-line values take precedence; config entries fill in the rest.
template <class T>
T param(const gk::ExperimentConfig& c, const std::string& key, const std::optional<T>& cli, T fallback) {
  if (cli) return *cli;
  if (auto v = c.get_int(key)) return static_cast<T>(*v);
  return fallback;
}

gk::SearchLimits limits_from(const gk::ExperimentConfig& c, std::optional<unsigned> threads,
                             std::optional<std::size_t> max_states) {
  gk::SearchLimits l;
  l.threads = param<unsigned>(c, "threads", threads, 1u);
  l.max_states = param<std::size_t>(c, "max_states", max_states, l.max_states);
  return l;
}

gk::PhiSpec parse_phi(const std::string& text) {
  gk::ExperimentConfig c;
  c.set("phi", text);
  return *gk::config_phi(c);
}

gk::PhiSpec phi_for(const gk::ExperimentConfig& c, const std::string& cli_phi, int m) {
  if (!cli_phi.empty()) return parse_phi(cli_phi);
  if (auto p = gk::config_phi(c)) return *p;
  std::vector<std::int64_t> images(static_cast<std::size_t>(m), 0);
  images[0] = 1;
  return gk::PhiSpec(images);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth experiments for groups F_m/R'"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--out", out.path, "write the result to this file instead of stdout");

  // goodwords
  auto* goodwords = app.add_subcommand("goodwords", "enumerate good words D_k and compare |D_k| with its lower bound");
  int gw_m = 2;
  std::string gw_phi;
  std::size_t gw_k = 4;
  bool gw_count_only = false;
  goodwords->add_option("-m", gw_m, "rank")->check(CLI::Range(1, 1 << 20));
  goodwords->add_option("--phi", gw_phi, "images of a_1..a_m, comma separated")->required();
  goodwords->add_option("-k", gw_k, "word length")->check(CLI::PositiveNumber);
  goodwords->add_flag("--count-only", gw_count_only, "print only the summary line");

  // rho
  auto* rho = app.add_subcommand("rho", "shortest relation of G = F_m/R");
  ConfigOptions rho_cfg;
  rho_cfg.attach(rho);
  std::optional<std::size_t> rho_max_len, rho_states;
  std::optional<unsigned> rho_threads;
  std::string rho_format = "text";
  rho->add_option("--max-len", rho_max_len, "longest relation to search for");
  rho->add_option("--max-states", rho_states, "state budget");
  rho->add_option("--threads", rho_threads, "worker threads");
  rho->add_option("--format", rho_format)->check(CLI::IsMember({"text", "json"}));

  // ball
  auto* ball = app.add_subcommand("ball", "sphere and ball sizes of G, or of F_m/R' with --lifted");
  ConfigOptions ball_cfg;
  ball_cfg.attach(ball);
  std::optional<std::size_t> ball_n, ball_states;
  std::optional<unsigned> ball_threads;
  bool ball_lifted = false;
  std::string ball_format = "csv";
  ball->add_option("--n-max", ball_n, "largest radius");
  ball->add_flag("--lifted", ball_lifted, "count elements of F_m/R' instead of G");
  ball->add_option("--max-states", ball_states, "state budget");
  ball->add_option("--threads", ball_threads, "worker threads");
  ball->add_option("--format", ball_format)->check(CLI::IsMember({"csv", "json"}));

  // bound
  auto* bound = app.add_subcommand("bound", "growth lower bound for F_m/R' from rho");
  int b_m = 2;
  std::int64_t b_C = 1, b_rho = 1;
  bound->add_option("-m", b_m, "rank")->required();
  bound->add_option("-C", b_C, "largest phi value on A^{+-1}")->required();
  bound->add_option("--rho", b_rho, "length of the shortest relation")->required();

  // sawcheck
  auto* saw = app.add_subcommand("sawcheck", "check that products of good words trace self-avoiding paths");
  ConfigOptions saw_cfg;
  saw_cfg.attach(saw);
  std::string saw_phi;
  std::optional<std::size_t> saw_k, saw_t, saw_states;
  std::optional<std::uint64_t> saw_budget, saw_seed;
  std::optional<unsigned> saw_threads;
  saw->add_option("--phi", saw_phi, "phi images (defaults to the config's phi, else 1,0,...)");
  saw->add_option("-k", saw_k, "good word length");
  saw->add_option("-t", saw_t, "number of sections");
  saw->add_option("--budget", saw_budget, "exhaustive up to this many products, sample beyond");
  saw->add_option("--seed", saw_seed, "sampling seed");
  saw->add_option("--max-states", saw_states, "state budget for the girth search");
  saw->add_option("--threads", saw_threads, "worker threads");

  // distinct
  auto* distinct = app.add_subcommand("distinct", "count distinct elements of F_m/R' among products of good words");
  ConfigOptions dis_cfg;
  dis_cfg.attach(distinct);
  std::string dis_phi;
  std::optional<std::size_t> dis_k, dis_t, dis_states, dis_samples;
  std::optional<std::uint64_t> dis_budget;
  std::optional<unsigned> dis_threads;
  distinct->add_option("--phi", dis_phi, "phi images (defaults to the config's phi, else 1,0,...)");
  distinct->add_option("-k", dis_k, "good word length");
  distinct->add_option("-t", dis_t, "number of sections");
  distinct->add_option("--budget", dis_budget, "largest d_k^t to enumerate");
  distinct->add_option("--length-samples", dis_samples, "products whose length is measured by BFS");
  distinct->add_option("--max-states", dis_states, "state budget");
  distinct->add_option("--threads", dis_threads, "worker threads");

  // series
  auto* series = app.add_subcommand("series", "F_2/F_2'' against F_2/gamma_3' ball by ball");
  std::size_t ser_n = 4;
  std::optional<std::size_t> ser_states;
  unsigned ser_threads = 1;
  std::string ser_format = "csv";
  series->add_option("--n-max", ser_n, "largest radius");
  series->add_option("--max-states", ser_states, "state budget");
  series->add_option("--threads", ser_threads, "worker threads");
  series->add_option("--format", ser_format)->check(CLI::IsMember({"csv", "json"}));

  // find-girth
  auto* fg = app.add_subcommand("find-girth", "random search for a subdirect Z x Sym(n) quotient with large rho");
  std::string fg_phi = "1,0";
  std::size_t fg_degree = 16, fg_tries = 50, fg_target = 27;
  std::uint64_t fg_seed = 0;
  std::optional<std::size_t> fg_states;
  unsigned fg_threads = 1;
  fg->add_option("--phi", fg_phi, "phi images; the rank is their count");
  fg->add_option("--degree", fg_degree, "permutation degree")->check(CLI::Range(1, 256));
  fg->add_option("--tries", fg_tries, "candidates to examine");
  fg->add_option("--target-rho", fg_target, "stop once rho >= this is certified");
  fg->add_option("--seed", fg_seed, "random seed");
  fg->add_option("--max-states", fg_states, "state budget per candidate");
  fg->add_option("--threads", fg_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*goodwords) {
      const gk::PhiSpec phi = parse_phi(gw_phi);
      if (phi.rank() != gw_m) throw gk::config_error("--phi has " + std::to_string(phi.rank()) + " entries, m is " +
                                                     std::to_string(gw_m));
      const auto words = gk::enumerate_good(phi, gw_k);
      std::string s;
      if (!gw_count_only)
        for (const auto& w : words) s += gk::format_word(w) + "\n";
      s += "d_k=" + std::to_string(words.size());
      bool pass = true;
      if (gw_k >= 4 && gw_m >= 2) {
        const auto b = gk::goods_bound(gw_m, static_cast<int>(gw_k));
        pass = words.size() >= b;
        s += " bound=" + std::to_string(b) + (pass ? " PASS" : " FAIL");
      }
      out.write(s + "\n");
      return pass ? kOk : kFalsified;
    }

    if (*bound) {
      out.write(json_text(gk::bound_to_json(gk::make_bound_report(b_m, b_C, b_rho))));
      return kOk;
    }

    if (*rho) {
      const auto cfg = rho_cfg.load();
      if (rho_cfg.dump) {
        out.write(cfg.dump());
        return kOk;
      }
      const auto o = gk::build_oracle(cfg);
      const auto max_len = param<std::size_t>(cfg, "max_len", rho_max_len, 10);
      const auto r = gk::compute_rho(o, max_len, limits_from(cfg, rho_threads, rho_states));
      out.write(rho_format == "json" ? json_text(gk::rho_to_json(r)) : gk::rho_to_text(r));
      return std::holds_alternative<gk::RhoCertificate>(r) ? kOk : kNotFound;
    }

    if (*ball) {
      const auto cfg = ball_cfg.load();
      if (ball_cfg.dump) {
        out.write(cfg.dump());
        return kOk;
      }
      const auto o = gk::build_oracle(cfg);
      const auto n = param<std::size_t>(cfg, "n_max", ball_n, 4);
      const auto lim = limits_from(cfg, ball_threads, ball_states);
      const auto rep = ball_lifted ? gk::enumerate_balls_FmodRprime(o, n, lim) : gk::enumerate_balls_G(o, n, lim);
      out.write(ball_format == "json" ? json_text(gk::growth_to_json(rep)) : gk::growth_to_csv(rep));
      if (!rep.complete) std::cerr << "budget exhausted after radius " << rep.achieved << "\n";
      return rep.complete ? kOk : kBudget;
    }

    if (*saw || *distinct) {
      const bool is_saw = static_cast<bool>(*saw);
      const auto& opts = is_saw ? saw_cfg : dis_cfg;
      const auto cfg = opts.load();
      if (opts.dump) {
        out.write(cfg.dump());
        return kOk;
      }
      const auto o = gk::build_oracle(cfg);
      const auto phi = phi_for(cfg, is_saw ? saw_phi : dis_phi, o.rank());
      const auto k = param<std::size_t>(cfg, "k", is_saw ? saw_k : dis_k, 4);
      const auto t = param<std::size_t>(cfg, "t", is_saw ? saw_t : dis_t, 2);
      const auto budget = param<std::uint64_t>(cfg, "budget", is_saw ? saw_budget : dis_budget, 100000);
      const auto lim = limits_from(cfg, is_saw ? saw_threads : dis_threads, is_saw ? saw_states : dis_states);

      // Certify rho just far enough to decide the inequality the experiment relies on.
      const auto C = phi.C();
      const auto kk = static_cast<std::int64_t>(k);
      std::optional<gk::RhoResult> rho_result;
      if (k >= 2) {
        const auto need = is_saw ? gk::rhok_threshold(C, kk) : gk::rhock_threshold(C, kk) - 1;
        try {
          rho_result = gk::compute_rho(o, static_cast<std::size_t>(std::max<std::int64_t>(need, 1)), lim);
        } catch (const gk::budget_exceeded& e) {
          std::cerr << "girth search stopped: " << e.what() << "; precondition unverified\n";
        }
      }

      if (is_saw) {
        const auto seed = param<std::uint64_t>(cfg, "seed", saw_seed, 0);
        const auto rep = gk::saw_check(o, phi, k, t, budget, seed, rho_result, lim);
        out.write(json_text(gk::saw_to_json(rep)));
        std::cerr << "violations=" << rep.violation_count << " precondition=" << gk::precondition_name(rep.precondition)
                  << "\n";
        return rep.precondition == gk::Precondition::verified && rep.violation_count > 0 ? kFalsified : kOk;
      }
      const auto samples = param<std::size_t>(cfg, "length_samples", dis_samples, 0);
      const auto rep = gk::distinctness_check(o, phi, k, t, budget, rho_result, samples, lim);
      out.write(json_text(gk::distinct_to_json(rep)));
      const bool broken = rep.precondition == gk::Precondition::verified &&
                          (rep.observed != rep.expected || rep.lengths_equal_kt != rep.lengths_checked);
      return broken ? kFalsified : kOk;
    }

    if (*series) {
      gk::SearchLimits lim;
      lim.threads = ser_threads;
      if (ser_states) lim.max_states = *ser_states;
      const auto meta = gk::enumerate_balls_FmodRprime(gk::make_free_abelian(2), ser_n, lim);
      const auto nil = gk::enumerate_balls_FmodRprime(gk::make_nilpotent_class2(2), ser_n, lim);
      const std::size_t upto = std::min(meta.achieved, nil.achieved);
      std::optional<std::size_t> first_strict;
      bool monotone = true;
      std::string csv = "n,ball_metabelian,ball_class2,rate_root_metabelian,rate_root_class2,monotone,strict\n";
      gk::Json rows = gk::Json::array();
      for (std::size_t n = 0; n <= upto; ++n) {
        const bool ok = nil.ball[n] >= meta.ball[n];
        const bool strict = nil.ball[n] > meta.ball[n];
        monotone = monotone && ok;
        if (strict && !first_strict) first_strict = n;
        auto rr = [](const std::optional<double>& v) { return v ? gk::format_real(*v) : std::string(); };
        csv += std::to_string(n) + "," + std::to_string(meta.ball[n]) + "," + std::to_string(nil.ball[n]) + "," +
               rr(meta.rate_root(n)) + "," + rr(nil.rate_root(n)) + "," + (ok ? "PASS" : "FAIL") + "," +
               (strict ? "yes" : "no") + "\n";
        rows.push_back(gk::Json{{"n", n},
                                {"ball_metabelian", meta.ball[n]},
                                {"ball_class2", nil.ball[n]},
                                {"rate_root_metabelian", gk::optional_real(meta.rate_root(n))},
                                {"rate_root_class2", gk::optional_real(nil.rate_root(n))},
                                {"monotone", ok}});
      }
      if (ser_format == "json") {
        gk::Json j;
        j["n_max"] = ser_n;
        j["achieved"] = upto;
        j["rows"] = rows;
        j["monotone"] = monotone;
        j["first_strict"] = first_strict ? gk::Json(*first_strict) : gk::Json(nullptr);
        out.write(json_text(j));
      } else {
        out.write(csv);
      }
      std::cerr << "first_strict=" << (first_strict ? std::to_string(*first_strict) : "none") << "\n";
      if (!monotone) return kFalsified;
      return meta.complete && nil.complete ? kOk : kBudget;
    }

    if (*fg) {
      const auto phi = parse_phi(fg_phi);
      gk::SearchLimits lim;
      lim.threads = fg_threads;
      if (fg_states) lim.max_states = *fg_states;
      const auto r = gk::find_high_girth_subdirect(phi, fg_degree, fg_tries, fg_target, fg_seed, lim);
      std::cerr << "tries=" << r.tries << " best_rho_at_least=" << r.best_rho_at_least
                << (r.reached ? " target reached" : " target not reached") << "\n";
      if (!r.best) return kNotFound;
      gk::ExperimentConfig cfg;
      cfg.set("kind", "subdirect");
      cfg.set("phi", fg_phi);
      cfg.set("degree", std::to_string(fg_degree));
      for (std::size_t g = 0; g < r.best_perms.size(); ++g) {
        std::string v;
        for (std::size_t i = 0; i < r.best_perms[g].size(); ++i) v += (i ? "," : "") + std::to_string(r.best_perms[g][i]);
        cfg.set(std::string("perm.") + static_cast<char>('a' + g), v);
      }
      out.write("# rho_at_least=" + std::to_string(r.best_rho_at_least) + "\n" + cfg.dump());
      return r.reached ? kOk : kNotFound;
    }
  } catch (const gk::budget_exceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const gk::invariant_violation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFalsified;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kOk;
}
