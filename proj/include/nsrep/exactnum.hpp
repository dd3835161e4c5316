#pragma once

// Exact scalars for the whole library: arbitrary-precision rationals,
// half-integers stored doubled, and univariate polynomials over Q.

#include "nsrep/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nsrep {

class Rational {
public:
  Rational() = default;
  Rational(long n) : v_(n) {} // NOLINT(google-explicit-constructor)
  Rational(int n) : v_(static_cast<long>(n)) {} // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw DivisionByZero();
    v_ = mpq_class(mpz_class(num), mpz_class(den));
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero();
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  Rational inverse() const { return Rational(1) / *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // floor(x) as an integer
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
  }

  std::string to_string() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  // Accepts `p` or `p/q` with optional sign on either part.
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    auto parse_int = [&](std::string_view s) {
      s = trim(s);
      std::string str(s);
      if (!str.empty() && str.front() == '+') str.erase(0, 1);
      if (str.empty()) throw ParseError("empty integer in '" + std::string(text) + "'");
      std::size_t start = (str.front() == '-') ? 1 : 0;
      if (start == str.size()) throw ParseError("bad integer '" + std::string(text) + "'");
      for (std::size_t i = start; i < str.size(); ++i)
        if (str[i] < '0' || str[i] > '9') throw ParseError("bad integer '" + std::string(text) + "'");
      return mpz_class(str);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text), mpz_class(1));
    mpz_class num = parse_int(text.substr(0, slash));
    mpz_class den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

private:
  mpq_class v_{0};
};

inline std::string to_string(const Rational& r) { return r.to_string(); }

/// An element of (1/2)Z, stored as twice its value.
class HalfInt {
public:
  constexpr HalfInt() = default;
  constexpr HalfInt(std::int64_t n) : twice_(2 * n) {} // NOLINT(google-explicit-constructor)
  static constexpr HalfInt from_twice(std::int64_t t) {
    HalfInt h;
    h.twice_ = t;
    return h;
  }
  static constexpr HalfInt half() { return from_twice(1); }

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool is_half_odd() const { return !is_integer(); }
  // Only valid for integer values.
  constexpr std::int64_t as_integer() const { return twice_ / 2; }
  Rational to_rational() const { return Rational(static_cast<long>(twice_), 2L); }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
  constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return a += b; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return a -= b; }
  friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return from_twice(k * a.twice_); }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt a, HalfInt b) { return a.twice_ <=> b.twice_; }

  std::string to_string() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
  }

  // `k` or `k/2` with k odd.
  static HalfInt parse(std::string_view text) {
    Rational r = Rational::parse(text);
    mpz_class den = r.denominator();
    if (den != 1 && den != 2) throw ParseError("not a half-integer: '" + std::string(text) + "'");
    mpz_class t = r.numerator() * (2 / den);
    if (!t.fits_slong_p()) throw ParseError("half-integer out of range: '" + std::string(text) + "'");
    return from_twice(t.get_si());
  }

private:
  std::int64_t twice_ = 0;
};

inline std::string to_string(HalfInt h) { return h.to_string(); }

enum class HalfClass { integer, half_odd };

inline HalfClass class_of(HalfInt h) { return h.is_integer() ? HalfClass::integer : HalfClass::half_odd; }

/// Univariate polynomial over Q, lowest degree first, no trailing zeros.
class RatPoly {
public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RatPoly constant(const Rational& r) { return RatPoly({r}); }
  // a + b*s
  static RatPoly affine(const Rational& a, const Rational& b) { return RatPoly({a, b}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational evaluate(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  RatPoly monic() const {
    if (is_zero()) return *this;
    RatPoly r = *this;
    Rational lc = leading();
    for (auto& c : r.c_) c /= lc;
    return r;
  }

  RatPoly& operator+=(const RatPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  RatPoly& operator-=(const RatPoly& o) { return *this += -o; }
  RatPoly operator-() const {
    RatPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  RatPoly& operator*=(const Rational& k) {
    if (k.is_zero()) { c_.clear(); return *this; }
    for (auto& c : c_) c *= k;
    return *this;
  }
  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(RatPoly a, const Rational& k) { return a *= k; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(out));
  }
  friend bool operator==(const RatPoly&, const RatPoly&) = default;

  // Euclidean division; returns {quotient, remainder}.
  std::pair<RatPoly, RatPoly> divmod(const RatPoly& d) const {
    if (d.is_zero()) throw DivisionByZero();
    RatPoly rem = *this;
    std::vector<Rational> q(std::max(0, degree() - d.degree() + 1));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      int shift = rem.degree() - d.degree();
      Rational f = rem.leading() / d.leading();
      q[shift] = f;
      for (int i = 0; i <= d.degree(); ++i) rem.c_[i + shift] -= f * d.c_[i];
      rem.trim();
    }
    return {RatPoly(std::move(q)), rem};
  }

  // Human-readable form in the variable `s`, highest degree first.
  std::string to_string(std::string_view var = "s") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& c = c_[i];
      if (c.is_zero()) continue;
      Rational mag = c.sign() < 0 ? -c : c;
      if (out.empty()) {
        if (c.sign() < 0) out += "-";
      } else {
        out += c.sign() < 0 ? " - " : " + ";
      }
      bool unit = mag == Rational(1);
      if (i == 0 || !unit) out += mag.to_string();
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0,0) = 0.
inline RatPoly poly_gcd(RatPoly p, RatPoly q) {
  while (!q.is_zero()) {
    RatPoly r = p.divmod(q).second;
    p = std::move(q);
    q = r.monic();
  }
  return p.monic();
}

namespace detail {

inline mpz_class pollard_rho(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      mpz_class diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

inline void factor_into(mpz_class n, std::vector<mpz_class>& primes) {
  if (n <= 1) return;
  for (unsigned long p = 2; p < 10000; ++p) {
    if (mpz_class(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    primes.push_back(n);
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

inline std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> primes;
  factor_into(abs(n), primes);
  std::sort(primes.begin(), primes.end());
  std::vector<mpz_class> divs{1};
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    std::size_t base = divs.size();
    mpz_class pk = 1;
    for (std::size_t e = i; e < j; ++e) {
      pk *= primes[i];
      for (std::size_t k = 0; k < base; ++k) divs.push_back(divs[k] * pk);
    }
    i = j;
  }
  return divs;
}

// Integer roots of a polynomial with integer coefficients (lowest first).
inline std::set<mpz_class> integer_roots(std::vector<mpz_class> c) {
  std::set<mpz_class> roots;
  std::size_t lead_zeros = 0;
  while (lead_zeros < c.size() && c[lead_zeros] == 0) ++lead_zeros;
  if (lead_zeros > 0) roots.insert(0);
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead_zeros));
  if (c.size() <= 1) return roots;
  auto eval = [&](const mpz_class& x) {
    mpz_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  // Cauchy bound: |x| <= 1 + max|c_i| / |c_n|
  mpz_class maxc = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) maxc = std::max(maxc, mpz_class(abs(c[i])));
  mpz_class bound = 1 + maxc / abs(c.back()) + 1;
  auto consider = [&](const mpz_class& d) {
    if (d > bound) return;
    if (eval(d) == 0) roots.insert(d);
    if (eval(-d) == 0) roots.insert(-d);
  };
  const mpz_class& c0 = c.front();
  if (bound <= 1000000) {
    for (unsigned long d = 1; mpz_class(d) <= bound; ++d)
      if (mpz_divisible_ui_p(c0.get_mpz_t(), d)) consider(mpz_class(d));
  } else {
    for (const auto& d : divisors(c0)) consider(d);
  }
  return roots;
}

} // namespace detail

/// Roots of p lying in Z (integer class) or in 1/2 + Z (half_odd class).
inline std::set<HalfInt> roots_in_half_integers(const RatPoly& p, HalfClass cls) {
  if (p.is_zero()) throw ZeroPolynomial();
  // Substitute s = x/2 and clear denominators: roots in (1/2)Z become integer roots x.
  std::vector<Rational> scaled;
  Rational pow2 = 1;
  for (const auto& c : p.coefficients()) {
    scaled.push_back(c / pow2);
    pow2 *= 2;
  }
  mpz_class lcm = 1;
  for (const auto& c : scaled) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : scaled) ints.push_back(c.numerator() * (lcm / c.denominator()));
  std::set<HalfInt> out;
  for (const auto& x : detail::integer_roots(std::move(ints))) {
    if (!x.fits_slong_p()) continue;
    HalfInt h = HalfInt::from_twice(x.get_si());
    if (class_of(h) == cls) out.insert(h);
  }
  return out;
}

} // namespace nsrep
