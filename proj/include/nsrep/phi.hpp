#pragma once

// The functional phi_s on U(n-), its polynomial restrictions in s, the
// critical set Phi and the simplicity verdict for V(c,h) (x) SA'_{a,b}.
//
// phi_s is read off the shifted action: applying E_{-k} to pu (x) t^{s+k}
// inside W^(s) gives, with d = deg p and the branch fixed by s + d,
//   phi_s(L_{-k} p)   = -(a + s - k b' - d + k) phi_s(p),  b' = b if s+d in Z, else b - 1/2
//   phi_s(G_{-r} p)   = -(-1)^|p| (a + s - 2r(b - 1/2) - d + r) phi_s(p)   if s+d in Z
//                     = -(-1)^|p| phi_s(p)                                   if s+d half-odd

#include "nsrep/errors.hpp"
#include "nsrep/exactnum.hpp"
#include "nsrep/interseries.hpp"
#include "nsrep/nsalgebra.hpp"
#include "nsrep/shifted.hpp"
#include "nsrep/verma.hpp"

#include <json.hpp>

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nsrep {

namespace detail {

inline Rational shifted_by(const Rational& s, const Rational& c) { return s + c; }
inline RatPoly shifted_by(const RatPoly& s, const Rational& c) { return s + RatPoly::constant(c); }

// Recursion over a word, innermost (rightmost) factor first. S is either a
// number or the polynomial variable s; s_integral fixes the class of s.
template <class S>
S phi_word(const Word& w, const S& s, bool s_integral, const Rational& a, const Rational& b, S one) {
  const Rational half(1, 2);
  S val = std::move(one);
  HalfInt deg(0);
  bool odd = false;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const Factor f = *it;
    const HalfInt mag = HalfInt::from_twice(f);
    const Rational d = deg.to_rational(), m = mag.to_rational();
    const bool int_class = s_integral == deg.is_integer();
    if (!is_odd_factor(f)) {
      const Rational bb = int_class ? b : b - half;
      val = val * (shifted_by(s, a - m * bb - d + m) * Rational(-1));
    } else {
      const Rational sign = odd ? Rational(1) : Rational(-1); // -(-1)^|p|
      if (int_class) val = val * (shifted_by(s, a - Rational(2) * m * (b - half) - d + m) * sign);
      else val = val * sign;
      odd = !odd;
    }
    deg -= mag;
  }
  return val;
}

} // namespace detail

/// phi_s on a raw word of negative modes (factors read left to right).
inline Rational phi_eval_word(const Word& w, HalfInt s, const Rational& a, const Rational& b) {
  return detail::phi_word<Rational>(w, s.to_rational(), s.is_integer(), a, b, Rational(1));
}

inline Rational phi_eval(const EnvElement& p, HalfInt s, const Rational& a, const Rational& b) {
  Rational out;
  for (const auto& [m, c] : p.terms()) out += c * phi_eval_word(m.factors(), s, a, b);
  return out;
}

/// phi_s applied to the raw (unstraightened) product of words, summed.
inline Rational phi_eval_words(const std::vector<std::pair<Word, Rational>>& sum, HalfInt s, const Rational& a,
                               const Rational& b) {
  Rational out;
  for (const auto& [w, c] : sum) out += c * phi_eval_word(w, s, a, b);
  return out;
}

/// Left side minus right side of the three identities phi_s must satisfy
/// on the tensor algebra for it to descend to U(n-):
///   phi((L_{-m}L_{-n} - L_{-n}L_{-m}) p) = (m - n) phi(L_{-m-n} p)
///   phi((L_{-m}G_{-r} - G_{-r}L_{-m}) p) = (m/2 - r) phi(G_{-m-r} p)
///   phi((G_{-r}G_{-q} + G_{-q}G_{-r}) p) = 2 phi(L_{-r-q} p)
enum class PhiIdentity { LL, LG, GG };

inline Rational phi_ideal_residual(PhiIdentity kind, HalfInt x, HalfInt y, const Word& p, HalfInt s,
                                   const Rational& a, const Rational& b) {
  auto cat = [&](std::initializer_list<Factor> head) {
    Word w(head);
    w.insert(w.end(), p.begin(), p.end());
    return w;
  };
  const Factor fx = static_cast<Factor>(x.twice()), fy = static_cast<Factor>(y.twice());
  const Factor fsum = fx + fy;
  Rational lhs, rhs;
  switch (kind) {
    case PhiIdentity::LL:
      if (!x.is_integer() || !y.is_integer() || x <= HalfInt(0) || y <= HalfInt(0)) throw Error("LL needs positive integers");
      lhs = phi_eval_word(cat({fx, fy}), s, a, b) - phi_eval_word(cat({fy, fx}), s, a, b);
      rhs = (x - y).to_rational() * phi_eval_word(cat({fsum}), s, a, b);
      break;
    case PhiIdentity::LG:
      if (!x.is_integer() || y.is_integer() || x <= HalfInt(0) || y <= HalfInt(0))
        throw Error("LG needs a positive integer and a positive half-odd index");
      lhs = phi_eval_word(cat({fx, fy}), s, a, b) - phi_eval_word(cat({fy, fx}), s, a, b);
      rhs = (x.to_rational() / Rational(2) - y.to_rational()) * phi_eval_word(cat({fsum}), s, a, b);
      break;
    case PhiIdentity::GG:
      if (x.is_integer() || y.is_integer() || x <= HalfInt(0) || y <= HalfInt(0))
        throw Error("GG needs positive half-odd indices");
      lhs = phi_eval_word(cat({fx, fy}), s, a, b) + phi_eval_word(cat({fy, fx}), s, a, b);
      rhs = Rational(2) * phi_eval_word(cat({fsum}), s, a, b);
      break;
  }
  return lhs - rhs;
}

/// s -> phi_s(p) restricted to each class of s.
struct PhiPolynomial {
  RatPoly int_class;
  RatPoly half_class;

  const RatPoly& for_class(HalfClass c) const { return c == HalfClass::integer ? int_class : half_class; }
  friend bool operator==(const PhiPolynomial&, const PhiPolynomial&) = default;
};

inline PhiPolynomial phi_polynomials(const EnvElement& p, const Rational& a, const Rational& b) {
  const RatPoly s({Rational(0), Rational(1)});
  PhiPolynomial out;
  for (const auto& [m, c] : p.terms()) {
    out.int_class += detail::phi_word<RatPoly>(m.factors(), s, true, a, b, RatPoly::constant(1)) * c;
    out.half_class += detail::phi_word<RatPoly>(m.factors(), s, false, a, b, RatPoly::constant(1)) * c;
  }
  return out;
}

/// The root excluded from Phi: -1/2 for (a,b) = (1/2,1/2).
inline std::optional<HalfInt> excluded_root(const Rational& a, const Rational& b) {
  if (a == Rational(1, 2) && b == Rational(1, 2)) return -HalfInt::half();
  return std::nullopt;
}

/// Per-class gcd of the restrictions over all generators of J.
inline PhiPolynomial phi_gcd(const std::vector<EnvElement>& qs, const Rational& a, const Rational& b) {
  PhiPolynomial g;
  for (const auto& q : qs) {
    PhiPolynomial pq = phi_polynomials(q, a, b);
    g.int_class = poly_gcd(g.int_class, pq.int_class);
    g.half_class = poly_gcd(g.half_class, pq.half_class);
  }
  return g;
}

/// Common zeros s in Z u (1/2 + Z) of phi_s over the given generators.
inline std::set<HalfInt> phi_set(const std::vector<EnvElement>& qs, const Rational& a, const Rational& b) {
  if (qs.empty()) throw Error("phi_set needs at least one nonzero generator");
  PhiPolynomial g = phi_gcd(qs, a, b);
  std::set<HalfInt> out;
  for (HalfClass c : {HalfClass::integer, HalfClass::half_odd}) {
    const RatPoly& poly = g.for_class(c);
    if (poly.is_zero())
      throw InfinitePhiClass(std::string("phi vanishes on the whole ") +
                             (c == HalfClass::integer ? "integral" : "half-odd") + " class");
    auto roots = roots_in_half_integers(poly, c);
    out.insert(roots.begin(), roots.end());
  }
  if (auto ex = excluded_root(a, b)) out.erase(*ex);
  return out;
}

inline std::set<HalfInt> phi_set(const EnvElement& q1, const EnvElement& q2, const Rational& a, const Rational& b) {
  std::vector<EnvElement> qs;
  for (const auto* q : {&q1, &q2})
    if (!q->is_zero()) qs.push_back(*q);
  return phi_set(qs, a, b);
}

enum class Verdict { simple, not_simple, simple_up_to_level_bound };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::simple: return "simple";
    case Verdict::not_simple: return "notSimple";
    case Verdict::simple_up_to_level_bound: return "simpleUpToLevelBound";
  }
  return "?";
}

struct SimplicityVerdict {
  VermaParams verma;
  SAParams sa; // normalised
  SingularVectorReport report;
  std::vector<EnvElement> generators; // all generators of J found below the bound
  PhiPolynomial gcd;
  std::set<HalfInt> phi_set;
  std::optional<HalfInt> excluded_root;
  Verdict verdict = Verdict::simple_up_to_level_bound;
  std::optional<HalfInt> max_phi;

  nlohmann::ordered_json to_json() const;
};

inline nlohmann::ordered_json poly_json(const RatPoly& p) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : p.coefficients()) arr.push_back(c.to_string());
  return arr;
}

inline nlohmann::ordered_json SimplicityVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "nsrep-verdict-1";
  j["c"] = verma.c.to_string();
  j["h"] = verma.h.to_string();
  j["a"] = sa.a.to_string();
  j["b"] = sa.b.to_string();
  j["sa_variant"] = nsrep::to_string(sa.variant);
  j["max_level"] = report.max_level.to_string();
  auto qs = nlohmann::ordered_json::array();
  for (const auto& q : generators) {
    PhiPolynomial pq = phi_polynomials(q, sa.a, sa.b);
    nlohmann::ordered_json e;
    e["q"] = q.to_string();
    e["int_class"] = poly_json(pq.int_class);
    e["half_class"] = poly_json(pq.half_class);
    qs.push_back(std::move(e));
  }
  j["generators"] = std::move(qs);
  if (!generators.empty()) {
    j["gcd_int_class"] = poly_json(gcd.int_class);
    j["gcd_half_class"] = poly_json(gcd.half_class);
  }
  auto phis = nlohmann::ordered_json::array();
  for (const auto& s : phi_set) phis.push_back(s.to_string());
  j["phi_set"] = std::move(phis);
  j["excluded_root"] = excluded_root ? nlohmann::ordered_json(excluded_root->to_string()) : nlohmann::ordered_json();
  j["verdict"] = nsrep::to_string(verdict);
  j["max_phi"] = max_phi ? nlohmann::ordered_json(max_phi->to_string()) : nlohmann::ordered_json();
  j["engine"] = "nsrep-1.0";
  return j;
}

/// Simplicity of V(c,h) (x) SA'_{a,b} from the singular vectors below
/// max_level. "simpleUpToLevelBound" means none were found, so the answer
/// rests on M(c,h) = V(c,h), which a finite scan cannot certify.
inline SimplicityVerdict simplicity_verdict(const Rational& c, const Rational& h, const Rational& a, const Rational& b,
                                            HalfInt max_level, SingularCache* cache = nullptr) {
  SimplicityVerdict v;
  v.verma = VermaParams{c, h};
  v.sa = sa_normalize(a, b);
  v.report = maximal_submodule_report(v.verma, max_level, cache);
  v.excluded_root = excluded_root(v.sa.a, v.sa.b);
  v.generators = v.report.generators();
  if (v.generators.empty()) return v;
  v.gcd = phi_gcd(v.generators, v.sa.a, v.sa.b);
  v.phi_set = phi_set(v.generators, v.sa.a, v.sa.b);
  if (v.phi_set.empty()) {
    v.verdict = Verdict::simple;
  } else {
    v.verdict = Verdict::not_simple;
    v.max_phi = *v.phi_set.rbegin();
  }
  return v;
}

/// True iff pu (x) t^s - phi_s(p) u (x) t^s lies in the closure of W^(s).
inline bool phi_congruence_holds(const EnvElement& p, HalfInt s, const ShiftedParams& params) {
  ShiftedModule mod(params);
  if (!params.in_band(s)) throw OutOfBand("exponent " + s.to_string() + " outside band");
  BandedSubspace w = filtration_closure(mod, s);
  ShiftedVector v;
  v.add(s, p, 1);
  v.add(s, PbwMonomial(), -phi_eval(p, s, params.sa.a, params.sa.b));
  return contains(w, mod.reduce(v));
}

} // namespace nsrep
