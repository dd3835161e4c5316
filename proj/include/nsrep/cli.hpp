#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// it can be driven in-process by tests.
//
//   nsrep axioms     [--range R] [--level-cap N] [--band R] [--seed S]
//   nsrep simplicity --c C --h H --a A --b B [--max-level N]
//   nsrep singular   --c C --h H [--max-level N]
//   nsrep phi        --word W --a A --b B [--s S]
//   nsrep iso        --left c,h,a,b --right c,h,a,b [--level-cap N] [--band R]
//   nsrep witness    --c C --h H --a A --b B [--m M] [--level-cap N] [--band R] [--kmax K]
//
// Common: --format human|machine, --cache PATH. Exit codes: 0 success,
// 1 property failure, 2 usage error.

#include "nsrep/axioms.hpp"
#include "nsrep/cache.hpp"
#include "nsrep/classify.hpp"
#include "nsrep/errors.hpp"
#include "nsrep/interseries.hpp"
#include "nsrep/phi.hpp"
#include "nsrep/shifted.hpp"
#include "nsrep/verma.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace nsrep::cli {

enum class Format { human, machine };

struct RunConfig {
  std::string command;
  std::string c, h, a, b;
  std::string max_level = "3", level_cap = "2", band = "3", kmax = "3";
  std::string range = "6";
  std::string word, s, m = "0";
  std::string left, right;
  std::string cache_path;
  std::string fault;
  std::uint64_t seed = 1;
  Format format = Format::human;
};

struct UsageError : Error {
  using Error::Error;
};

namespace detail {

inline Rational need_rational(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing ") + flag);
  return Rational::parse(text);
}

inline HalfInt need_halfint(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing ") + flag);
  return HalfInt::parse(text);
}

inline std::vector<Rational> parse_tuple(const std::string& text, const char* flag) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.size() != 4) throw UsageError(std::string(flag) + " expects c,h,a,b");
  return out;
}

// Bracket with the Virasoro central term of [L_m, L_{-m}] removed.
inline GenCombination bracket_without_virasoro_centre(const Generator& x, const Generator& y) {
  GenCombination out = bracket(x, y);
  if (x.kind() == GenKind::L && y.kind() == GenKind::L) out.erase(Generator::C());
  return out;
}

class Emitter {
public:
  Emitter(std::ostream& out, Format f) : out_(out), f_(f) {}

  void record(const nlohmann::ordered_json& j, const std::string& human) {
    if (f_ == Format::machine) out_ << j.dump() << '\n';
    else out_ << human << '\n';
  }

private:
  std::ostream& out_;
  Format f_;
};

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline std::string set_text(const std::set<HalfInt>& s) {
  std::vector<std::string> xs;
  for (const auto& x : s) xs.push_back(x.to_string());
  return "{" + join(xs, ", ") + "}";
}

inline nlohmann::ordered_json set_json(const std::set<HalfInt>& s) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& x : s) arr.push_back(x.to_string());
  return arr;
}

inline nlohmann::ordered_json check_json(const std::string& suite, const CheckResult& r) {
  nlohmann::ordered_json j;
  j["schema"] = "nsrep-axioms-1";
  j["suite"] = suite;
  j["checked"] = r.checked;
  j["status"] = r.ok() ? "ok" : "fail";
  j["first_failure"] = r.first_failure ? nlohmann::ordered_json(*r.first_failure) : nlohmann::ordered_json();
  return j;
}

} // namespace detail

inline int cmd_axioms(const RunConfig& cfg, detail::Emitter& em, std::ostream& err, SingularCache& cache) {
  const HalfInt range = detail::need_halfint(cfg.range, "--range");
  const HalfInt cap = detail::need_halfint(cfg.level_cap, "--level-cap");
  const HalfInt band = detail::need_halfint(cfg.band, "--band");
  if (range < HalfInt(1)) throw UsageError("--range must be at least 1");
  BracketFn br = bracket;
  if (cfg.fault == "virasoro-centre") br = detail::bracket_without_virasoro_centre;
  else if (!cfg.fault.empty()) throw UsageError("unknown fault " + cfg.fault);

  std::vector<std::pair<std::string, CheckResult>> results;
  results.emplace_back("superalgebra", superalgebra_check(range.twice(), br));

  // SA parameters: fixed sample including both degenerate variants, plus
  // seeded extra points.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  std::vector<SAParams> sa = {SAParams::make(Rational(1, 3), 0), SAParams::make(0, 1, SAVariant::sub01),
                              SAParams::make(Rational(1, 2), Rational(1, 2), SAVariant::quot1212),
                              SAParams::make(Rational(3, 4), Rational(1, 2))};
  for (int i = 0; i < 2; ++i) sa.push_back(SAParams::make(Rational(num(rng), den(rng)), Rational(num(rng), den(rng))));
  CheckResult sa_all;
  for (const auto& p : sa) {
    CheckResult r = sa_module_check(p, 6, range.to_rational().floor().get_si(), br);
    sa_all.checked += r.checked;
    if (r.first_failure) sa_all.fail(*r.first_failure);
  }
  results.emplace_back("sa-module", sa_all);

  CheckResult iso;
  Rational res = sa_isomorphism_residual(range.to_rational().floor().get_si());
  iso.checked = 1;
  if (!res.is_zero()) iso.fail("SA'(0,1) -> SA'(-1/2,1/2) residual " + res.to_string());
  results.emplace_back("sa-isomorphism", iso);

  std::vector<ShiftedParams> pts = {
      ShiftedParams::make({Rational(7, 3), 2}, Rational(1, 3), 0, HighestWeightVariant::verma, cap, band),
      ShiftedParams::make({Rational(7, 3), 0}, 0, 0, HighestWeightVariant::simple, cap, band, 3, 0, &cache),
      ShiftedParams::make({Rational(7, 3), 0}, Rational(1, 2), Rational(1, 2), HighestWeightVariant::simple, cap, band,
                          3, 0, &cache),
      ShiftedParams::make({Rational(num(rng), den(rng)), Rational(num(rng), den(rng))}, Rational(num(rng), den(rng)),
                          Rational(num(rng), den(rng)), HighestWeightVariant::verma, cap, band)};
  CheckResult shifted_all, inter_all;
  for (const auto& p : pts) {
    CheckResult r = shifted_axiom_check(p, HalfInt(2), br, &cache);
    shifted_all.checked += r.checked;
    if (r.first_failure) shifted_all.fail(*r.first_failure);
    CheckResult t = intertwining_check(p, HalfInt(2), &cache);
    inter_all.checked += t.checked;
    if (t.first_failure) inter_all.fail(*t.first_failure);
  }
  results.emplace_back("shifted-module", shifted_all);
  results.emplace_back("intertwining", inter_all);

  bool ok = true;
  for (const auto& [suite, r] : results) {
    em.record(detail::check_json(suite, r), suite + ": " + (r.ok() ? "ok" : "FAIL") + " (" +
                                                std::to_string(r.checked) + " checked)" +
                                                (r.ok() ? "" : " first failure: " + *r.first_failure));
    if (!r.ok()) {
      if (ok) err << "first failing identity: " << *r.first_failure << '\n';
      ok = false;
    }
  }
  return ok ? 0 : 1;
}

inline int cmd_simplicity(const RunConfig& cfg, detail::Emitter& em, SingularCache& cache) {
  auto v = simplicity_verdict(detail::need_rational(cfg.c, "--c"), detail::need_rational(cfg.h, "--h"),
                              detail::need_rational(cfg.a, "--a"), detail::need_rational(cfg.b, "--b"),
                              detail::need_halfint(cfg.max_level, "--max-level"), &cache);
  std::vector<std::string> qs;
  for (const auto& q : v.generators) qs.push_back(q.to_string());
  std::string human = "V(" + v.verma.c.to_string() + ", " + v.verma.h.to_string() + ") x SA'" + v.sa.to_string() +
                      "\n  singular generators: " + (qs.empty() ? "none up to level " + v.report.max_level.to_string()
                                                                 : detail::join(qs, "; ")) +
                      "\n  Phi: " + detail::set_text(v.phi_set) +
                      (v.excluded_root ? " (excluding " + v.excluded_root->to_string() + ")" : "") +
                      "\n  verdict: " + to_string(v.verdict) +
                      (v.max_phi ? " (unique simple submodule W^(" + v.max_phi->to_string() + "))" : "");
  if (v.verdict == Verdict::simple_up_to_level_bound) human += " (" + v.report.max_level.to_string() + ")";
  em.record(v.to_json(), human);
  return 0;
}

inline int cmd_singular(const RunConfig& cfg, detail::Emitter& em, SingularCache& cache) {
  VermaParams vp{detail::need_rational(cfg.c, "--c"), detail::need_rational(cfg.h, "--h")};
  auto rep = maximal_submodule_report(vp, detail::need_halfint(cfg.max_level, "--max-level"), &cache);
  nlohmann::ordered_json j;
  j["schema"] = "nsrep-singular-1";
  j["c"] = vp.c.to_string();
  j["h"] = vp.h.to_string();
  j["max_level"] = rep.max_level.to_string();
  auto levels = nlohmann::ordered_json::array();
  std::string human = "M(" + vp.c.to_string() + ", " + vp.h.to_string() + "), levels <= " + rep.max_level.to_string();
  for (const auto& e : rep.entries) {
    nlohmann::ordered_json le;
    le["level"] = e.level.to_string();
    auto gens = nlohmann::ordered_json::array();
    for (const auto& q : e.basis) {
      gens.push_back(q.to_string());
      human += "\n  level " + e.level.to_string() + ": " + q.to_string();
    }
    le["generators"] = std::move(gens);
    levels.push_back(std::move(le));
  }
  if (rep.entries.empty()) human += "\n  no singular vectors";
  j["levels"] = std::move(levels);
  j["engine"] = kEngineVersion;
  em.record(j, human);
  return 0;
}

inline int cmd_phi(const RunConfig& cfg, detail::Emitter& em) {
  if (cfg.word.empty()) throw UsageError("missing --word");
  EnvElement p = from_word(parse_word(cfg.word));
  const Rational a = detail::need_rational(cfg.a, "--a"), b = detail::need_rational(cfg.b, "--b");
  PhiPolynomial poly = phi_polynomials(p, a, b);
  nlohmann::ordered_json j;
  j["schema"] = "nsrep-phi-1";
  j["word"] = cfg.word;
  j["element"] = p.to_string();
  j["a"] = a.to_string();
  j["b"] = b.to_string();
  j["int_class"] = poly_json(poly.int_class);
  j["half_class"] = poly_json(poly.half_class);
  std::string human = "phi_s(" + p.to_string() + ") at (a,b) = (" + a.to_string() + ", " + b.to_string() + ")" +
                      "\n  s in Z:       " + poly.int_class.to_string() +
                      "\n  s in 1/2 + Z: " + poly.half_class.to_string();
  try {
    auto zeros = phi_set({p}, a, b);
    j["zeros"] = detail::set_json(zeros);
    human += "\n  zeros: " + detail::set_text(zeros);
  } catch (const InfinitePhiClass& e) {
    j["zeros"] = "infinite";
    human += std::string("\n  zeros: ") + e.what();
  }
  if (!cfg.s.empty()) {
    HalfInt s = HalfInt::parse(cfg.s);
    Rational v = phi_eval(p, s, a, b);
    j["s"] = s.to_string();
    j["value"] = v.to_string();
    human += "\n  phi_" + s.to_string() + " = " + v.to_string();
  }
  em.record(j, human);
  return 0;
}

inline int cmd_iso(const RunConfig& cfg, detail::Emitter& em, SingularCache& cache) {
  if (cfg.left.empty() || cfg.right.empty()) throw UsageError("iso needs --left and --right");
  auto l = detail::parse_tuple(cfg.left, "--left"), r = detail::parse_tuple(cfg.right, "--right");
  auto d1 = TensorModuleDescriptor::make(l[0], l[1], l[2], l[3]);
  auto d2 = TensorModuleDescriptor::make(r[0], r[1], r[2], r[3]);
  const HalfInt cap = detail::need_halfint(cfg.level_cap, "--level-cap");
  const HalfInt band = detail::need_halfint(cfg.band, "--band");
  const bool iso = tensor_isomorphic(d1, d2);
  const bool same = fingerprint(d1, cap, band, &cache) == fingerprint(d2, cap, band, &cache);
  nlohmann::ordered_json j;
  j["schema"] = "nsrep-iso-1";
  j["left"] = d1.to_string();
  j["right"] = d2.to_string();
  j["isomorphic"] = iso;
  j["fingerprints_equal"] = same;
  em.record(j, d1.to_string() + " vs " + d2.to_string() + ": " + (iso ? "isomorphic" : "not isomorphic") +
                   " (fingerprints " + (same ? "equal" : "differ") + ")");
  return iso == same ? 0 : 1;
}

inline int cmd_witness(const RunConfig& cfg, detail::Emitter& em) {
  auto params = ShiftedParams::make(
      {detail::need_rational(cfg.c, "--c"), detail::need_rational(cfg.h, "--h")}, detail::need_rational(cfg.a, "--a"),
      detail::need_rational(cfg.b, "--b"), HighestWeightVariant::verma, detail::need_halfint(cfg.level_cap, "--level-cap"),
      detail::need_halfint(cfg.band, "--band"), detail::need_halfint(cfg.kmax, "--kmax"));
  const HalfInt m = detail::need_halfint(cfg.m, "--m");
  const bool proper = reducibility_witness(params, m);
  nlohmann::ordered_json j;
  j["schema"] = "nsrep-witness-1";
  j["c"] = params.verma.c.to_string();
  j["h"] = params.verma.h.to_string();
  j["a"] = params.sa.a.to_string();
  j["b"] = params.sa.b.to_string();
  j["m"] = m.to_string();
  j["level_cap"] = params.level_cap.to_string();
  j["band"] = params.band_radius.to_string();
  j["kmax"] = params.k_max.to_string();
  j["proper"] = proper;
  em.record(j, std::string("submodule generated by u (x) t^") + m.to_string() +
                   (proper ? " is proper: u (x) t^" + (m - HalfInt::half()).to_string() + " not reached"
                           : " reached u (x) t^" + (m - HalfInt::half()).to_string()));
  return proper ? 0 : 1;
}

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neveu-Schwarz tensor module toolkit", "nsrep"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "human";

  // --h is the highest weight, so help is --help only.
  app.set_help_flag("--help", "print help");
  auto add_sub = [&](const char* name, const char* about) {
    auto* sub = app.add_subcommand(name, about);
    sub->set_help_flag("--help", "print help");
    return sub;
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
    sub->add_option("--cache", cfg.cache_path, "singular-vector cache file");
    sub->add_option("--seed", cfg.seed, "seed for sampled sweeps");
  };
  auto params = [&](CLI::App* sub, bool with_ab) {
    sub->add_option("--c", cfg.c, "central charge");
    sub->add_option("--h", cfg.h, "highest weight");
    if (with_ab) {
      sub->add_option("--a", cfg.a, "intermediate series a");
      sub->add_option("--b", cfg.b, "intermediate series b");
    }
  };

  auto* axioms = add_sub("axioms", "verify algebra, module and intertwining identities");
  axioms->add_option("--range", cfg.range, "index range for the algebra and SA sweeps");
  axioms->add_option("--level-cap", cfg.level_cap, "level cap for the shifted module");
  axioms->add_option("--band", cfg.band, "band radius for the shifted module");
  axioms->add_option("--inject-fault", cfg.fault)->group("");
  common(axioms);

  auto* simplicity = add_sub("simplicity", "simplicity verdict for V(c,h) x SA'(a,b)");
  params(simplicity, true);
  simplicity->add_option("--max-level", cfg.max_level, "singular-vector scan bound");
  common(simplicity);

  auto* singular = add_sub("singular", "singular vectors of M(c,h)");
  params(singular, false);
  singular->add_option("--max-level", cfg.max_level, "scan bound");
  common(singular);

  auto* phi = add_sub("phi", "restrictions of s -> phi_s(word)");
  phi->add_option("--word", cfg.word, "word such as \"L-1 G-1/2\"");
  phi->add_option("--a", cfg.a, "intermediate series a");
  phi->add_option("--b", cfg.b, "intermediate series b");
  phi->add_option("--s", cfg.s, "also evaluate at this s");
  common(phi);

  auto* iso = add_sub("iso", "isomorphism test with fingerprint corroboration");
  iso->add_option("--left", cfg.left, "c,h,a,b");
  iso->add_option("--right", cfg.right, "c,h,a,b");
  iso->add_option("--level-cap", cfg.level_cap, "fingerprint level cap");
  iso->add_option("--band", cfg.band, "fingerprint band radius");
  common(iso);

  auto* witness = add_sub("witness", "reducibility witness for M(c,h) x SA'(a,b)");
  params(witness, true);
  witness->add_option("--m", cfg.m, "seed exponent");
  witness->add_option("--level-cap", cfg.level_cap, "level cap");
  witness->add_option("--band", cfg.band, "band radius");
  witness->add_option("--kmax", cfg.kmax, "largest generator index used");
  common(witness);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  cfg.format = format == "machine" ? Format::machine : Format::human;
  detail::Emitter em(out, cfg.format);

  try {
    SingularCache cache = cfg.cache_path.empty() ? SingularCache() : SingularCache(cfg.cache_path);
    if (axioms->parsed()) return cmd_axioms(cfg, em, err, cache);
    if (simplicity->parsed()) return cmd_simplicity(cfg, em, cache);
    if (singular->parsed()) return cmd_singular(cfg, em, cache);
    if (phi->parsed()) return cmd_phi(cfg, em);
    if (iso->parsed()) return cmd_iso(cfg, em, cache);
    if (witness->parsed()) return cmd_witness(cfg, em);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

} // namespace nsrep::cli
