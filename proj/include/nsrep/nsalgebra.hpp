#pragma once

// The Neveu-Schwarz superalgebra: generators, the superbracket and PBW
// straightening inside U(n-).

#include "nsrep/errors.hpp"
#include "nsrep/exactnum.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nsrep {

enum class GenKind { L, G, C };

class Generator {
public:
  static Generator L(std::int64_t n) { return Generator(GenKind::L, HalfInt(n)); }
  static Generator G(HalfInt r) {
    if (r.is_integer()) throw Error("G index must be half-odd, got " + r.to_string());
    return Generator(GenKind::G, r);
  }
  static Generator C() { return Generator(GenKind::C, HalfInt(0)); }
  // E_k: L_k for integer k, G_k for half-odd k.
  static Generator E(HalfInt k) { return k.is_integer() ? L(k.as_integer()) : G(k); }

  GenKind kind() const { return kind_; }
  HalfInt index() const { return index_; }
  HalfInt degree() const { return index_; }
  int parity() const { return kind_ == GenKind::G ? 1 : 0; }

  friend bool operator==(const Generator&, const Generator&) = default;
  friend auto operator<=>(const Generator&, const Generator&) = default;

  std::string to_string() const {
    switch (kind_) {
      case GenKind::L: return "L" + index_.to_string();
      case GenKind::G: return "G" + index_.to_string();
      case GenKind::C: return "C";
    }
    return "?";
  }

private:
  Generator(GenKind k, HalfInt i) : kind_(k), index_(i) {}
  GenKind kind_;
  HalfInt index_;
};

/// Linear combination of generators (C included as a key).
using GenCombination = std::map<Generator, Rational>;

inline void accumulate(GenCombination& acc, const Generator& g, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = acc.try_emplace(g);
  it->second += c;
  if (it->second.is_zero()) acc.erase(it);
}

inline std::string to_string(const GenCombination& comb) {
  if (comb.empty()) return "0";
  std::string out;
  for (const auto& [g, c] : comb) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*" + g.to_string();
  }
  return out;
}

/// The superbracket of two basis elements.
inline GenCombination bracket(const Generator& x, const Generator& y) {
  GenCombination out;
  if (x.kind() == GenKind::C || y.kind() == GenKind::C) return out;
  const Rational half(1L, 2L);
  if (x.kind() == GenKind::L && y.kind() == GenKind::L) {
    std::int64_t m = x.index().as_integer(), n = y.index().as_integer();
    accumulate(out, Generator::L(m + n), Rational(static_cast<long>(n - m)));
    if (m + n == 0) accumulate(out, Generator::C(), Rational(static_cast<long>(m * m * m - m), 12L));
    return out;
  }
  if (x.kind() == GenKind::L && y.kind() == GenKind::G) {
    Rational m = x.index().to_rational(), r = y.index().to_rational();
    accumulate(out, Generator::G(x.index() + y.index()), r - m * half);
    return out;
  }
  if (x.kind() == GenKind::G && y.kind() == GenKind::L) {
    for (const auto& [g, c] : bracket(y, x)) accumulate(out, g, -c);
    return out;
  }
  HalfInt sum = x.index() + y.index();
  accumulate(out, Generator::L(sum.as_integer()), Rational(2));
  if (sum == HalfInt(0)) {
    Rational r = x.index().to_rational();
    accumulate(out, Generator::C(), -Rational(1L, 3L) * (r * r - Rational(1L, 4L)));
  }
  return out;
}

using BracketFn = std::function<GenCombination(const Generator&, const Generator&)>;

inline int super_sign(int p, int q) { return (p & q) ? -1 : 1; }

/// [x,y] + (-1)^{|x||y|}[y,x]; zero for a superalgebra.
inline GenCombination antisymmetry_residual(const Generator& x, const Generator& y,
                                            const BracketFn& br = bracket) {
  GenCombination out = br(x, y);
  int sign = super_sign(x.parity(), y.parity());
  for (const auto& [g, c] : br(y, x)) accumulate(out, g, Rational(sign) * c);
  return out;
}

/// (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]].
inline GenCombination super_jacobi_residual(const Generator& x, const Generator& y,
                                            const Generator& z, const BracketFn& br = bracket) {
  GenCombination out;
  auto nested = [&](const Generator& a, const Generator& b, const Generator& c, int sign) {
    for (const auto& [g, coef] : br(b, c))
      for (const auto& [g2, coef2] : br(a, g)) accumulate(out, g2, Rational(sign) * coef * coef2);
  };
  nested(x, y, z, super_sign(x.parity(), z.parity()));
  nested(y, z, x, super_sign(y.parity(), x.parity()));
  nested(z, x, y, super_sign(z.parity(), y.parity()));
  return out;
}

// ---------------------------------------------------------------------------
// U(n-)

/// A negative-mode factor E_{-t/2} encoded by t = twice its magnitude:
/// even t is L_{-t/2}, odd t is G_{-t/2}.
using Factor = int;

inline bool is_odd_factor(Factor f) { return (f & 1) != 0; }
inline Generator factor_generator(Factor f) { return Generator::E(-HalfInt::from_twice(f)); }

/// A word in negative-mode factors, read left to right. Not necessarily
/// normal ordered.
using Word = std::vector<Factor>;

namespace detail {
// x may stand to the left of y in a normal-ordered word
inline bool precedes(Factor x, Factor y) {
  bool xo = is_odd_factor(x), yo = is_odd_factor(y);
  if (!xo && yo) return true;
  if (xo != yo) return false;
  return xo ? x > y : x >= y;
}
} // namespace detail

/// Normal-ordered PBW word L_{-n_t}^{k_t}...L_{-n_1}^{k_1} G_{-r_l}...G_{-r_1}.
class PbwMonomial {
public:
  PbwMonomial() = default;
  // Throws if the word is not in normal order.
  explicit PbwMonomial(Word factors) : f_(std::move(factors)) {
    for (Factor x : f_)
      if (x <= 0) throw Error("PBW factors must be negative modes");
    for (std::size_t i = 1; i < f_.size(); ++i)
      if (!detail::precedes(f_[i - 1], f_[i])) throw Error("word is not normal ordered");
  }

  const Word& factors() const { return f_; }
  bool is_identity() const { return f_.empty(); }
  std::size_t length() const { return f_.size(); }

  HalfInt level() const {
    std::int64_t t = 0;
    for (Factor x : f_) t += x;
    return HalfInt::from_twice(t);
  }
  HalfInt degree() const { return -level(); }
  int parity() const {
    int p = 0;
    for (Factor x : f_) p ^= (x & 1);
    return p;
  }

  // n -> exponent of L_{-n}
  std::map<std::int64_t, int> l_parts() const {
    std::map<std::int64_t, int> out;
    for (Factor x : f_)
      if (!is_odd_factor(x)) ++out[x / 2];
    return out;
  }
  // r values of the G_{-r} factors, decreasing
  std::vector<HalfInt> g_parts() const {
    std::vector<HalfInt> out;
    for (Factor x : f_)
      if (is_odd_factor(x)) out.push_back(HalfInt::from_twice(x));
    return out;
  }

  friend bool operator==(const PbwMonomial&, const PbwMonomial&) = default;
  friend auto operator<=>(const PbwMonomial&, const PbwMonomial&) = default;

  std::string to_string() const;
  static PbwMonomial parse(std::string_view text);

private:
  Word f_;
};

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += " ";
    Factor f = w[i];
    out += is_odd_factor(f) ? "G" : "L";
    out += (-HalfInt::from_twice(f)).to_string();
    std::size_t run = j - i;
    if (!is_odd_factor(f) && run > 1) {
      out += "^" + std::to_string(run);
    } else if (run > 1) {
      // odd factors are never grouped
      for (std::size_t k = 1; k < run; ++k) out += " G" + (-HalfInt::from_twice(f)).to_string();
    }
    i = j;
  }
  return out;
}

inline std::string PbwMonomial::to_string() const { return word_to_string(f_); }

/// Parses `L-2^2 L-1 G-3/2 G-1/2` (or `1`) into a raw word, in the order written.
inline Word parse_word(std::string_view text) {
  Word out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  skip_ws();
  if (text.substr(i) == "1") return out;
  while (i < text.size()) {
    char kind = text[i];
    if (kind != 'L' && kind != 'G') throw ParseError("expected L or G in '" + std::string(text) + "'");
    ++i;
    std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '^' && text[i] != '\t') ++i;
    HalfInt idx = HalfInt::parse(text.substr(start, i - start));
    if (idx >= HalfInt(0)) throw ParseError("only negative modes allowed in '" + std::string(text) + "'");
    if ((kind == 'L') != idx.is_integer()) throw ParseError("index parity mismatch in '" + std::string(text) + "'");
    int exponent = 1;
    if (i < text.size() && text[i] == '^') {
      if (kind == 'G') throw ParseError("exponent on odd factor in '" + std::string(text) + "'");
      ++i;
      std::size_t es = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (es == i) throw ParseError("missing exponent in '" + std::string(text) + "'");
      exponent = std::stoi(std::string(text.substr(es, i - es)));
      if (exponent < 1) throw ParseError("exponent must be positive in '" + std::string(text) + "'");
    }
    for (int k = 0; k < exponent; ++k) out.push_back(static_cast<Factor>((-idx).twice()));
    skip_ws();
  }
  if (out.empty()) throw ParseError("empty word");
  return out;
}

inline PbwMonomial PbwMonomial::parse(std::string_view text) {
  try {
    return PbwMonomial(parse_word(text));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

/// Finite linear combination of PBW monomials; an element of U(n-).
class EnvElement {
public:
  using Terms = std::map<PbwMonomial, Rational>;

  EnvElement() = default;
  explicit EnvElement(const PbwMonomial& m, Rational c = 1) { add(m, c); }
  static EnvElement one() { return EnvElement(PbwMonomial()); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }

  Rational coefficient(const PbwMonomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
  }

  void add(const PbwMonomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(m);
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
  void add_scaled(const EnvElement& o, const Rational& c) {
    if (c.is_zero()) return;
    for (const auto& [m, v] : o.t_) add(m, v * c);
  }

  EnvElement& operator+=(const EnvElement& o) { add_scaled(o, 1); return *this; }
  EnvElement& operator-=(const EnvElement& o) { add_scaled(o, -1); return *this; }
  EnvElement& operator*=(const Rational& c) {
    if (c.is_zero()) { t_.clear(); return *this; }
    for (auto& kv : t_) kv.second *= c;
    return *this;
  }
  friend EnvElement operator+(EnvElement a, const EnvElement& b) { return a += b; }
  friend EnvElement operator-(EnvElement a, const EnvElement& b) { return a -= b; }
  friend EnvElement operator*(EnvElement a, const Rational& c) { return a *= c; }
  friend bool operator==(const EnvElement&, const EnvElement&) = default;

  // Level of the terms; the element must be homogeneous and nonzero.
  HalfInt level() const {
    if (t_.empty()) throw Error("level of zero element");
    HalfInt l = t_.begin()->first.level();
    for (const auto& kv : t_)
      if (kv.first.level() != l) throw Error("element is not homogeneous");
    return l;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) {
      if (out.empty()) {
        out += c.to_string();
      } else {
        out += c.sign() < 0 ? " - " : " + ";
        out += (c.sign() < 0 ? -c : c).to_string();
      }
      out += "*(" + m.to_string() + ")";
    }
    return out;
  }

private:
  Terms t_;
};

namespace detail {

inline const EnvElement& left_multiply_cached(Factor f, const PbwMonomial& m);

inline EnvElement left_multiply_uncached(Factor f, const PbwMonomial& m) {
  const Word& w = m.factors();
  if (w.empty() || (precedes(f, w.front()) && !(is_odd_factor(f) && f == w.front()))) {
    Word out;
    out.reserve(w.size() + 1);
    out.push_back(f);
    out.insert(out.end(), w.begin(), w.end());
    return EnvElement(PbwMonomial(std::move(out)));
  }
  PbwMonomial rest(Word(w.begin() + 1, w.end()));
  Factor first = w.front();
  if (is_odd_factor(f) && f == first) {
    // G_{-r} G_{-r} = (1/2)[G_{-r}, G_{-r}] = L_{-2r}
    return left_multiply_cached(2 * f, rest);
  }
  // f first = (-1)^{|f||first|} first f + [f, first]
  EnvElement out;
  int sign = super_sign(f & 1, first & 1);
  for (const auto& [t, c] : left_multiply_cached(f, rest).terms())
    out.add_scaled(left_multiply_cached(first, t), Rational(sign) * c);
  for (const auto& [g, c] : bracket(factor_generator(f), factor_generator(first))) {
    // negative modes never produce a central term
    out.add_scaled(left_multiply_cached(static_cast<Factor>((-g.index()).twice()), rest), c);
  }
  return out;
}

inline const EnvElement& left_multiply_cached(Factor f, const PbwMonomial& m) {
  thread_local std::map<std::pair<Factor, PbwMonomial>, EnvElement> cache;
  auto key = std::make_pair(f, m);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  EnvElement value = left_multiply_uncached(f, m);
  return cache.emplace(std::move(key), std::move(value)).first->second;
}

} // namespace detail

/// f * m in PBW normal form.
inline EnvElement left_multiply(Factor f, const PbwMonomial& m) { return detail::left_multiply_cached(f, m); }

inline EnvElement left_multiply(Factor f, const EnvElement& e) {
  EnvElement out;
  for (const auto& [m, c] : e.terms()) out.add_scaled(detail::left_multiply_cached(f, m), c);
  return out;
}

/// Product of a word (applied right to left) with an element.
inline EnvElement multiply_word(const Word& w, EnvElement e) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) e = left_multiply(*it, e);
  return e;
}

/// The product of a raw word, straightened.
inline EnvElement from_word(const Word& w) { return multiply_word(w, EnvElement::one()); }

inline EnvElement straighten_product(const EnvElement& a, const EnvElement& b) {
  EnvElement out;
  for (const auto& [m, c] : a.terms()) out.add_scaled(multiply_word(m.factors(), b), c);
  return out;
}

} // namespace nsrep
