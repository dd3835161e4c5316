#pragma once

// Isomorphism classes of V(c,h) (x) SA'_{a,b}: parameter equality after
// normalisation, plus a fingerprint computed from the modules themselves so
// that a bug in one cannot hide a bug in the other.

#include "nsrep/exactnum.hpp"
#include "nsrep/interseries.hpp"
#include "nsrep/shifted.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace nsrep {

struct TensorModuleDescriptor {
  Rational c, h;
  SAParams sa; // normalised: 0 <= a < 1, b != 1

  static TensorModuleDescriptor make(Rational c, Rational h, const Rational& a, const Rational& b) {
    return TensorModuleDescriptor{std::move(c), std::move(h), sa_normalize(a, b)};
  }

  friend bool operator==(const TensorModuleDescriptor&, const TensorModuleDescriptor&) = default;

  std::string to_string() const {
    return "(" + c.to_string() + ", " + h.to_string() + ", " + sa.a.to_string() + ", " + sa.b.to_string() + ")";
  }
};

inline bool tensor_isomorphic(const TensorModuleDescriptor& d1, const TensorModuleDescriptor& d2) {
  return d1.c == d2.c && d1.h == d2.h && d1.sa == d2.sa;
}

struct Fingerprint {
  struct WeightEntry {
    Rational weight;
    std::size_t dimension = 0;
    std::vector<std::string> spectrum; // sorted pencil ratios on the truncated weight space
    friend bool operator==(const WeightEntry&, const WeightEntry&) = default;
  };

  Rational central_charge;
  Rational weight_coset; // a + h modulo 1/2, in [0, 1/2)
  std::vector<WeightEntry> weights;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "nsrep-fingerprint-1";
    j["c"] = central_charge.to_string();
    j["weight_coset"] = weight_coset.to_string();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& w : weights) {
      nlohmann::ordered_json e;
      e["weight"] = w.weight.to_string();
      e["dimension"] = w.dimension;
      e["spectrum"] = w.spectrum;
      arr.push_back(std::move(e));
    }
    j["weights"] = std::move(arr);
    return j;
  }
};

namespace detail {

// Coefficient of a diagonal operator on one basis vector; nullopt when the
// image is zero.
inline std::optional<Rational> diagonal_coefficient(const ShiftedVector& img, HalfInt t, const PbwMonomial& m) {
  if (img.is_zero()) return std::nullopt;
  for (const auto& [k, c] : img.terms())
    if (k.first != t || k.second != m) throw Error("pencil operator is not diagonal on " + m.to_string());
  return img.terms().begin()->second;
}

inline std::string pencil_ratio(const std::optional<Rational>& num, const std::optional<Rational>& den) {
  if (!den) return num ? "inf" : "0/0";
  return (num ? *num / *den : Rational(0)).to_string();
}

} // namespace detail

/// Central charge, weight-support coset, and for each weight a+h+s with
/// |s| <= band: the dimension of the truncated weight space of the simple
/// variant and the spectra of two pencils built from modes above the cap,
///   G_{r+1} G_r  vs  L_{2r+1}   and   L_{k+1} L_k  vs  L_{2k+1},
/// which act diagonally on vectors of level <= cap.
inline Fingerprint fingerprint(const TensorModuleDescriptor& d, HalfInt cap, HalfInt band,
                               SingularCache* cache = nullptr) {
  auto params =
      ShiftedParams::make({d.c, d.h}, d.sa.a, d.sa.b, HighestWeightVariant::simple, cap, band, 3, 0, cache);
  ShiftedModule mod(params);
  Fingerprint f;
  f.central_charge = d.c;
  const Rational half(1, 2);
  Rational coset = (d.sa.a + d.h) / half;
  f.weight_coset = (coset - Rational(mpq_class(coset.floor()))) * half;

  // smallest integer and half-odd modes above the cap
  const HalfInt k(cap.to_rational().floor().get_si() + 1);
  const HalfInt r = HalfInt::from_twice(cap.twice() + (cap.is_integer() ? 1 : 2));
  struct Pencil {
    std::string tag;
    std::vector<Generator> a; // applied right to left
    Generator b;
  };
  const std::vector<Pencil> pencils = {
      {"G", {Generator::G(r + HalfInt(1)), Generator::G(r)}, Generator::E(r + r + HalfInt(1))},
      {"L", {Generator::E(k + HalfInt(1)), Generator::E(k)}, Generator::E(k + k + HalfInt(1))}};

  for (HalfInt s = params.band_low(); s <= params.band_high(); s += HalfInt::half()) {
    Fingerprint::WeightEntry e;
    e.weight = d.sa.a + d.h + s.to_rational();
    const auto monomials = mod.weight_space_monomials(s);
    e.dimension = monomials.size();
    for (const auto& pencil : pencils) {
      for (const auto& m : monomials) {
        ShiftedVector v(m, s);
        ShiftedVector av = v;
        for (auto it = pencil.a.rbegin(); it != pencil.a.rend(); ++it) av = mod.apply(*it, av);
        const HalfInt t = s + pencil.b.index();
        auto num = detail::diagonal_coefficient(av, t, m);
        auto den = detail::diagonal_coefficient(mod.apply(pencil.b, v), t, m);
        e.spectrum.push_back(pencil.tag + ":" + detail::pencil_ratio(num, den));
      }
    }
    std::sort(e.spectrum.begin(), e.spectrum.end());
    f.weights.push_back(std::move(e));
  }
  return f;
}

} // namespace nsrep
