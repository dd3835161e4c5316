#pragma once

// The intermediate series SA_{a,b}, its simple subquotients, parameter
// normalisation and the isomorphism SA'_{0,1} -> SA'_{-1/2,1/2}.

#include "nsrep/axioms.hpp"
#include "nsrep/errors.hpp"
#include "nsrep/exactnum.hpp"
#include "nsrep/nsalgebra.hpp"

#include <map>
#include <string>
#include <string_view>

namespace nsrep {

enum class SAVariant { full, sub01, quot1212 };

inline std::string to_string(SAVariant v) {
  switch (v) {
    case SAVariant::full: return "full";
    case SAVariant::sub01: return "sub01";
    case SAVariant::quot1212: return "quot1212";
  }
  return "?";
}

struct SAParams {
  Rational a;
  Rational b;
  SAVariant variant = SAVariant::full;

  // sub01 needs b = 1, a integer (drops x_{-a}); quot1212 needs b = 1/2,
  // a half-odd (drops y_{-a}).
  static SAParams make(Rational a, Rational b, SAVariant v = SAVariant::full) {
    if (v == SAVariant::sub01 && !(b == Rational(1) && a.is_integer()))
      throw Error("sub01 requires b = 1 and integral a");
    if (v == SAVariant::quot1212 && !(b == Rational(1, 2) && (a + Rational(1, 2)).is_integer()))
      throw Error("quot1212 requires b = 1/2 and half-odd a");
    return SAParams{std::move(a), std::move(b), v};
  }

  friend bool operator==(const SAParams&, const SAParams&) = default;

  std::string to_string() const {
    return "(" + a.to_string() + ", " + b.to_string() + ", " + nsrep::to_string(variant) + ")";
  }
};

/// Element of SA_{a,b}: x_j for integer j and y_{1/2+j}, stored by j.
class SAVector {
public:
  using Coords = std::map<std::int64_t, Rational>;

  static SAVector x(std::int64_t j, Rational c = 1) {
    SAVector v;
    v.add_x(j, c);
    return v;
  }
  // y at index r (half-odd)
  static SAVector y(HalfInt r, Rational c = 1) {
    if (r.is_integer()) throw Error("y index must be half-odd");
    SAVector v;
    v.add_y((r - HalfInt::half()).as_integer(), c);
    return v;
  }

  const Coords& x_terms() const { return x_; }
  const Coords& y_terms() const { return y_; } // key j stands for y_{1/2+j}
  bool is_zero() const { return x_.empty() && y_.empty(); }

  void add_x(std::int64_t j, const Rational& c) { add(x_, j, c); }
  void add_y(std::int64_t j, const Rational& c) { add(y_, j, c); }
  void erase_x(std::int64_t j) { x_.erase(j); }
  void erase_y(std::int64_t j) { y_.erase(j); }

  void add_scaled(const SAVector& o, const Rational& c) {
    for (const auto& [j, v] : o.x_) add_x(j, v * c);
    for (const auto& [j, v] : o.y_) add_y(j, v * c);
  }
  SAVector& operator+=(const SAVector& o) { add_scaled(o, 1); return *this; }
  SAVector& operator-=(const SAVector& o) { add_scaled(o, -1); return *this; }
  friend SAVector operator*(SAVector v, const Rational& c) {
    SAVector out;
    out.add_scaled(v, c);
    return out;
  }
  friend bool operator==(const SAVector&, const SAVector&) = default;

  Rational max_abs() const {
    Rational m;
    for (const auto* coords : {&x_, &y_})
      for (const auto& [j, v] : *coords) {
        Rational a = v.sign() < 0 ? -v : v;
        if (a > m) m = a;
      }
    return m;
  }

  // e.g. "4/3*x[3] - 1*y[1/2]"
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    auto emit = [&](const Rational& c, const std::string& basis) {
      if (out.empty()) {
        out += c.to_string();
      } else {
        out += c.sign() < 0 ? " - " : " + ";
        out += (c.sign() < 0 ? -c : c).to_string();
      }
      out += "*" + basis;
    };
    for (const auto& [j, c] : x_) emit(c, "x[" + std::to_string(j) + "]");
    for (const auto& [j, c] : y_) emit(c, "y[" + (HalfInt(j) + HalfInt::half()).to_string() + "]");
    return out;
  }

  static SAVector parse(std::string_view text);

private:
  static void add(Coords& m, std::int64_t j, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = m.try_emplace(j);
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
  Coords x_, y_;
};

inline SAVector SAVector::parse(std::string_view text) {
  SAVector out;
  std::string s(text);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && s[i] == ' ') ++i;
  };
  skip();
  if (s.substr(i) == "0") return out;
  bool first = true;
  while (i < s.size()) {
    skip();
    Rational sign = 1;
    if (!first) {
      if (s[i] != '+' && s[i] != '-') throw ParseError("expected + or - in '" + s + "'");
      if (s[i] == '-') sign = -1;
      ++i;
      skip();
    }
    std::size_t star = s.find('*', i);
    if (star == std::string::npos) throw ParseError("expected coef*basis in '" + s + "'");
    Rational coef = Rational::parse(s.substr(i, star - i)) * sign;
    i = star + 1;
    if (i + 2 >= s.size() || (s[i] != 'x' && s[i] != 'y') || s[i + 1] != '[')
      throw ParseError("expected x[..] or y[..] in '" + s + "'");
    char kind = s[i];
    std::size_t close = s.find(']', i);
    if (close == std::string::npos) throw ParseError("unterminated index in '" + s + "'");
    HalfInt idx = HalfInt::parse(s.substr(i + 2, close - i - 2));
    if (kind == 'x') {
      if (!idx.is_integer()) throw ParseError("x index must be integral in '" + s + "'");
      out.add_x(idx.as_integer(), coef);
    } else {
      if (idx.is_integer()) throw ParseError("y index must be half-odd in '" + s + "'");
      out.add_y((idx - HalfInt::half()).as_integer(), coef);
    }
    i = close + 1;
    skip();
    first = false;
  }
  return out;
}

namespace detail {
inline void reduce_variant(SAVector& v, const SAParams& p) {
  if (p.variant == SAVariant::sub01) v.erase_x((-p.a).floor().get_si());
  if (p.variant == SAVariant::quot1212) v.erase_y((-p.a - Rational(1, 2)).floor().get_si());
}
} // namespace detail

/// The action of one generator on SA_{a,b} (or its variant), termwise.
inline SAVector sa_apply(const Generator& g, const SAVector& v, const SAParams& p) {
  SAVector out;
  const Rational half(1, 2);
  const Rational& a = p.a;
  const Rational& b = p.b;
  switch (g.kind()) {
    case GenKind::C: break;
    case GenKind::L: {
      std::int64_t i = g.index().as_integer();
      Rational ri(static_cast<long>(i));
      for (const auto& [j, c] : v.x_terms()) out.add_x(i + j, c * (a + Rational(static_cast<long>(j)) + ri * b));
      for (const auto& [j, c] : v.y_terms())
        out.add_y(i + j, c * (a + half + Rational(static_cast<long>(j)) + ri * (b - half)));
      break;
    }
    case GenKind::G: {
      std::int64_t i = (g.index() - HalfInt::half()).as_integer();
      for (const auto& [j, c] : v.x_terms()) out.add_y(i + j, c);
      for (const auto& [j, c] : v.y_terms())
        out.add_x(1 + i + j, c * (a + half + Rational(static_cast<long>(j)) + Rational(2) * g.index().to_rational() * (b - half)));
      break;
    }
  }
  detail::reduce_variant(out, p);
  return out;
}

/// Basis of the (variant) module with |index| <= range.
inline std::vector<SAVector> sa_basis(const SAParams& p, std::int64_t range) {
  std::vector<SAVector> out;
  for (std::int64_t j = -range; j <= range; ++j) {
    SAVector v = SAVector::x(j);
    detail::reduce_variant(v, p);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  for (std::int64_t t = -2 * range; t <= 2 * range; ++t) {
    if (t % 2 == 0) continue;
    SAVector v = SAVector::y(HalfInt::from_twice(t));
    detail::reduce_variant(v, p);
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

/// Bracket compatibility on SA_{a,b} (or its variant) for generators with
/// |index| <= twice_gen_bound / 2 and basis vectors with |index| <= range.
inline CheckResult sa_module_check(const SAParams& p, std::int64_t twice_gen_bound, std::int64_t range,
                                   const BracketFn& br = bracket) {
  CheckResult r;
  auto act = [&](const Generator& g, const SAVector& v) { return sa_apply(g, v, p); };
  const auto gens = generators_within(twice_gen_bound);
  for (const auto& v : sa_basis(p, range))
    for (const auto& g1 : gens)
      for (const auto& g2 : gens) {
        ++r.checked;
        if (!module_residual(act, g1, g2, v, br).is_zero())
          r.fail("SA" + p.to_string() + " " + g1.to_string() + " " + g2.to_string() + " " + v.to_string());
      }
  return r;
}

namespace detail {
inline Rational frac(const Rational& r) { return r - Rational(mpq_class(r.floor())); }
} // namespace detail

/// Canonical representative of the simple module SA'_{a,b}: 0 <= a < 1,
/// b != 1, with the variant flag set for the two degenerate classes.
inline SAParams sa_normalize(const Rational& a, const Rational& b) {
  const Rational half(1, 2);
  if (b == Rational(1)) {
    if (a.is_integer()) return SAParams::make(half, half, SAVariant::quot1212);
    return SAParams::make(detail::frac(a + half), half);
  }
  if (b == half && (a + half).is_integer()) return SAParams::make(half, half, SAVariant::quot1212);
  return SAParams::make(detail::frac(a), b);
}

inline SAParams sa_normalize(const SAParams& p) { return sa_normalize(p.a, p.b); }

inline bool sa_isomorphic(const Rational& a1, const Rational& b1, const Rational& a2, const Rational& b2) {
  return sa_normalize(a1, b1) == sa_normalize(a2, b2);
}

/// Maximum coefficient of f(g v) - g f(v) for the map
///   f: SA'_{0,1} -> SA'_{-1/2,1/2},  x_i -> (1/i) y_{1/2+i},  y_{1/2+j} -> x_{j+1},
/// over generators |index| <= 3 and source basis |index| <= range. The
/// target is taken modulo the trivial line C y_{1/2}, outside the image of f.
inline Rational sa_isomorphism_residual(std::int64_t range) {
  if (range < 1) throw Error("index range must be positive");
  const SAParams src = SAParams::make(0, 1, SAVariant::sub01);
  const SAParams dst = SAParams::make(Rational(-1, 2), Rational(1, 2), SAVariant::quot1212);
  auto f = [](const SAVector& v) {
    SAVector out;
    for (const auto& [i, c] : v.x_terms()) out.add_y(i, c / Rational(static_cast<long>(i)));
    for (const auto& [j, c] : v.y_terms()) out.add_x(j + 1, c);
    return out;
  };
  Rational worst;
  for (const auto& g : generators_within(6))
    for (const auto& v : sa_basis(src, range)) {
      SAVector r = f(sa_apply(g, v, src));
      r -= sa_apply(g, f(v), dst);
      if (r.max_abs() > worst) worst = r.max_abs();
    }
  return worst;
}

} // namespace nsrep
