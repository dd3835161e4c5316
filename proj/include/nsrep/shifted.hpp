#pragma once

// The shifted tensor module V (x) C[t^{+-1/2}], its identification with
// V (x) SA_{a,b}, truncated weight spaces, submodule closures and the
// endomorphism-space diagnostic.

#include "nsrep/axioms.hpp"
#include "nsrep/errors.hpp"
#include "nsrep/interseries.hpp"
#include "nsrep/linalg.hpp"
#include "nsrep/verma.hpp"

#include <json.hpp>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace nsrep {

enum class HighestWeightVariant { verma, simple };

inline std::string to_string(HighestWeightVariant v) { return v == HighestWeightVariant::verma ? "verma" : "simple"; }

struct ShiftedParams {
  VermaParams verma;
  SAParams sa;
  HighestWeightVariant variant = HighestWeightVariant::verma;
  std::shared_ptr<const SingularVectorReport> report; // simple variant only
  HalfInt level_cap = 2;
  HalfInt band_radius = 3;
  HalfInt band_center = 0;
  HalfInt k_max = 3;

  /// Normalises (a,b); builds the singular-vector report for the simple
  /// variant up to max(level_cap, max_level).
  static ShiftedParams make(VermaParams v, const Rational& a, const Rational& b, HighestWeightVariant hw,
                            HalfInt level_cap = 2, HalfInt band_radius = 3, HalfInt k_max = 3,
                            HalfInt max_level = 0, SingularCache* cache = nullptr) {
    ShiftedParams p;
    p.verma = std::move(v);
    p.sa = sa_normalize(a, b);
    p.variant = hw;
    p.level_cap = level_cap;
    p.band_radius = band_radius;
    p.k_max = k_max;
    if (hw == HighestWeightVariant::simple)
      p.report = std::make_shared<SingularVectorReport>(
          maximal_submodule_report(p.verma, std::max({max_level, level_cap, HalfInt::half()}), cache));
    p.validate();
    return p;
  }

  void validate() const {
    if (sa.variant == SAVariant::sub01) throw Error("shifted module needs normalised SA parameters (b != 1)");
    if (band_radius < HalfInt(1)) throw Error("band radius must be at least 1");
    if (level_cap < HalfInt(0)) throw NegativeLevel();
    if (variant == HighestWeightVariant::simple) {
      if (!report) throw Error("simple variant needs a singular-vector report");
      if (level_cap > report->max_level) throw LevelExceedsBound("level cap exceeds report bound");
    }
  }

  bool barred() const { return sa.variant == SAVariant::quot1212; }
  HalfInt band_low() const { return band_center - band_radius; }
  HalfInt band_high() const { return band_center + band_radius; }
  bool in_band(HalfInt s) const { return band_low() <= s && s <= band_high(); }
};

/// Finite combination of pu (x) t^s, keyed by (s, PBW monomial).
class ShiftedVector {
public:
  using Key = std::pair<HalfInt, PbwMonomial>;
  using Terms = std::map<Key, Rational>;

  ShiftedVector() = default;
  ShiftedVector(const PbwMonomial& m, HalfInt s, Rational c = 1) { add(s, m, c); }
  static ShiftedVector unit(HalfInt s) { return ShiftedVector(PbwMonomial(), s); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  Rational coefficient(HalfInt s, const PbwMonomial& m) const {
    auto it = t_.find({s, m});
    return it == t_.end() ? Rational(0) : it->second;
  }

  void add(HalfInt s, const PbwMonomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(Key{s, m});
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
  void add(HalfInt s, const EnvElement& e, const Rational& c) {
    for (const auto& [m, v] : e.terms()) add(s, m, v * c);
  }
  void add_scaled(const ShiftedVector& o, const Rational& c) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : o.t_) add(k.first, k.second, v * c);
  }
  void erase(HalfInt s, const PbwMonomial& m) { t_.erase({s, m}); }

  ShiftedVector& operator+=(const ShiftedVector& o) { add_scaled(o, 1); return *this; }
  ShiftedVector& operator-=(const ShiftedVector& o) { add_scaled(o, -1); return *this; }
  friend ShiftedVector operator+(ShiftedVector a, const ShiftedVector& b) { return a += b; }
  friend ShiftedVector operator-(ShiftedVector a, const ShiftedVector& b) { return a -= b; }
  friend ShiftedVector operator*(ShiftedVector a, const Rational& c) {
    ShiftedVector out;
    out.add_scaled(a, c);
    return out;
  }
  friend bool operator==(const ShiftedVector&, const ShiftedVector&) = default;

  // Components grouped by exponent.
  std::map<HalfInt, EnvElement> by_exponent() const {
    std::map<HalfInt, EnvElement> out;
    for (const auto& [k, v] : t_) out[k.first].add(k.second, v);
    return out;
  }

  // e.g. "(1*(L-1) - 2*(G-1/2 ...))u⊗t^[3/2] + (1*(1))u⊗t^[2]"
  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [s, e] : by_exponent()) {
      if (!out.empty()) out += " + ";
      out += "(" + e.to_string() + ")u⊗t^[" + s.to_string() + "]";
    }
    return out;
  }

private:
  Terms t_;
};

/// A homogeneous vector p u of V (x) SA_{a,b}: keys (monomial, SA index r),
/// with r integral for x_r and half-odd for y_r.
class TensorVector {
public:
  using Key = std::pair<PbwMonomial, HalfInt>;
  using Terms = std::map<Key, Rational>;

  TensorVector() = default;
  TensorVector(const PbwMonomial& m, HalfInt r, Rational c = 1) { add(m, r, c); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add(const PbwMonomial& m, HalfInt r, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.try_emplace(Key{m, r});
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
  void add_scaled(const TensorVector& o, const Rational& c) {
    for (const auto& [k, v] : o.t_) add(k.first, k.second, v * c);
  }
  friend bool operator==(const TensorVector&, const TensorVector&) = default;

private:
  Terms t_;
};

inline SAVector sa_basis_vector(HalfInt r) {
  return r.is_integer() ? SAVector::x(r.as_integer()) : SAVector::y(r);
}

/// The module structure on V (x) C[t^{+-1/2}] for fixed parameters.
class ShiftedModule {
public:
  explicit ShiftedModule(ShiftedParams p) : p_(std::move(p)), verma_(p_.verma) { p_.validate(); }

  const ShiftedParams& params() const { return p_; }

  /// The highest-weight side action on pu, reduced in the chosen variant.
  /// No truncation is applied here.
  EnvElement hw_apply(const Generator& g, const EnvElement& v) const { return reduce_hw(verma_.apply(g, v)); }

  EnvElement reduce_hw(const EnvElement& e) const {
    if (p_.variant == HighestWeightVariant::verma) return e;
    return reduce_mod_submodule(*p_.report, e);
  }

  /// Reduced representative in the variant (simple quotient and bar
  /// quotient); throws TruncationOverflow past the level cap.
  ShiftedVector reduce(const ShiftedVector& v) const { return reduce_impl(v, false); }

  /// As reduce(), but components above the level cap are dropped.
  ShiftedVector project(const ShiftedVector& v) const { return reduce_impl(v, true); }

  // Lines spanned by pu (x) t^{deg p - a} (bar-quotient only).
  bool is_bar_line(HalfInt s, HalfInt level) const {
    return p_.barred() && s.to_rational() == -level.to_rational() - p_.sa.a;
  }

  ShiftedVector apply(const Generator& g, const ShiftedVector& v) const { return reduce(apply_raw(g, v)); }

  /// The action before variant reduction and truncation.
  ShiftedVector apply_raw(const Generator& g, const ShiftedVector& v) const {
    ShiftedVector out;
    const Rational half(1, 2);
    const Rational& a = p_.sa.a;
    const Rational& b = p_.sa.b;
    for (const auto& [key, coef] : v.terms()) {
      const auto& [s, m] = key;
      const HalfInt deg = m.degree();
      const bool int_class = (s + deg).is_integer();
      const Rational rs = s.to_rational(), rdeg = deg.to_rational();
      EnvElement pu(m);
      switch (g.kind()) {
        case GenKind::C: out.add(s, m, coef * p_.verma.c); break;
        case GenKind::L: {
          HalfInt k = g.index();
          Rational bb = int_class ? b : b - half;
          out.add(s + k, verma_.apply(g, pu), coef);
          out.add(s + k, m, coef * (a + rs + k.to_rational() * bb - rdeg));
          break;
        }
        case GenKind::G: {
          HalfInt shift = g.index();
          Rational k2p1 = Rational(2) * g.index().to_rational(); // 2k+1 for G_{1/2+k}
          Rational sign(m.parity() ? -1 : 1);
          Rational extra = int_class ? Rational(1) : a + rs + k2p1 * (b - half) - rdeg;
          out.add(s + shift, verma_.apply(g, pu), coef);
          out.add(s + shift, m, coef * sign * extra);
          break;
        }
      }
    }
    return out;
  }

  /// Splits an unreduced vector into its reduced part at or below the cap and
  /// the part above it. The high part is reduced modulo J only where the
  /// report reaches its level, so a zero high part is a sufficient (not
  /// necessary) condition for the true image to fit under the cap.
  std::pair<ShiftedVector, ShiftedVector> split(const ShiftedVector& v) const {
    ShiftedVector low, high;
    for (const auto& [s, e] : v.by_exponent())
      for (const auto& [n, part] : by_level(e)) {
        if (n <= p_.level_cap) {
          low.add(s, part, 1);
        } else {
          const bool reducible = p_.variant == HighestWeightVariant::simple && n <= p_.report->max_level;
          high.add(s, reducible ? reduce_hw(part) : part, 1);
        }
      }
    drop_bar_lines(high);
    return {reduce(low), std::move(high)};
  }

private:
  void drop_bar_lines(ShiftedVector& v) const {
    if (!p_.barred()) return;
    std::vector<ShiftedVector::Key> drop;
    for (const auto& [k, c] : v.terms())
      if (is_bar_line(k.first, k.second.level())) drop.push_back(k);
    for (const auto& k : drop) v.erase(k.first, k.second);
  }

  ShiftedVector reduce_impl(const ShiftedVector& v, bool drop_high) const {
    ShiftedVector out;
    for (const auto& [s, e] : v.by_exponent()) {
      EnvElement kept;
      for (const auto& [n, part] : by_level(e)) {
        if (n <= p_.level_cap) kept += part;
        else if (!drop_high)
          throw TruncationOverflow("level " + n.to_string() + " exceeds cap " + p_.level_cap.to_string());
      }
      out.add(s, reduce_hw(kept), 1);
    }
    drop_bar_lines(out);
    return out;
  }

public:
  /// Basis of the truncated weight space at exponent s, ordered by level
  /// and then by level_basis order.
  std::vector<ShiftedVector> weight_space_basis(HalfInt s) const {
    std::vector<ShiftedVector> out;
    for (const auto& m : weight_space_monomials(s)) out.emplace_back(m, s);
    return out;
  }

  std::vector<PbwMonomial> weight_space_monomials(HalfInt s) const {
    std::vector<PbwMonomial> out;
    for (HalfInt n = 0; n <= p_.level_cap; n += HalfInt::half()) {
      if (is_bar_line(s, n)) continue;
      if (p_.variant == HighestWeightVariant::verma) {
        for (const auto& m : level_basis(n)) out.push_back(m);
      } else {
        for (const auto& e : quotient_level_basis(*p_.report, n)) out.push_back(e.terms().begin()->first);
      }
    }
    return out;
  }

  // --- V (x) SA side -------------------------------------------------------

  /// Leibniz action on V (x) SA_{a,b}: g(pu (x) w) = (g pu) (x) w + (-1)^{|g||p|} pu (x) g w.
  TensorVector tensor_apply(const Generator& g, const TensorVector& v) const {
    TensorVector out;
    for (const auto& [key, coef] : v.terms()) {
      const auto& [m, r] = key;
      if (g.kind() == GenKind::C) {
        out.add(m, r, coef * p_.verma.c);
        continue;
      }
      EnvElement gp = hw_apply(g, EnvElement(m));
      for (const auto& [m2, c2] : gp.terms()) out.add(m2, r, coef * c2);
      Rational sign(super_sign(g.parity(), m.parity()));
      SAVector w = sa_apply(g, sa_basis_vector(r), p_.sa);
      for (const auto& [j, c] : w.x_terms()) out.add(m, HalfInt(j), coef * sign * c);
      for (const auto& [j, c] : w.y_terms()) out.add(m, HalfInt(j) + HalfInt::half(), coef * sign * c);
    }
    return out;
  }

  /// pu (x) x_m -> pu (x) t^{m + deg p},  pu (x) y_r -> pu (x) t^{r + deg p}.
  static ShiftedVector to_shifted(const TensorVector& v) {
    ShiftedVector out;
    for (const auto& [k, c] : v.terms()) out.add(k.second + k.first.degree(), k.first, c);
    return out;
  }

  static TensorVector from_shifted(const ShiftedVector& v) {
    TensorVector out;
    for (const auto& [k, c] : v.terms()) out.add(k.second, k.first - k.second.degree(), c);
    return out;
  }

private:
  ShiftedParams p_;
  VermaModule verma_;
};

// --- closures ----------------------------------------------------------------

/// A subspace of the banded truncation, row-reduced per exponent in the
/// coordinates of ShiftedModule::weight_space_monomials.
class BandedSubspace {
public:
  BandedSubspace(const ShiftedModule& mod) : mod_(&mod) {
    const auto& p = mod.params();
    for (HalfInt s = p.band_low(); s <= p.band_high(); s += HalfInt::half()) {
      auto ms = mod.weight_space_monomials(s);
      std::map<PbwMonomial, std::size_t> idx;
      for (std::size_t i = 0; i < ms.size(); ++i) idx.emplace(ms[i], i);
      const std::size_t dim = ms.size();
      slots_.emplace(s, Slot{std::move(ms), std::move(idx), linalg::Subspace(dim)});
    }
  }

  const ShiftedParams& params() const { return mod_->params(); }

  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& [s, slot] : slots_) d += slot.space.dimension();
    return d;
  }
  std::size_t dimension_at(HalfInt s) const { return slots_.at(s).space.dimension(); }
  std::size_t ambient_dimension_at(HalfInt s) const { return slots_.at(s).space.ambient_dimension(); }

  // Inserts each homogeneous component; returns the components that grew
  // the span, in reduced form.
  std::vector<ShiftedVector> insert(const ShiftedVector& v) {
    std::vector<ShiftedVector> grown;
    for (const auto& [s, e] : v.by_exponent()) {
      auto& slot = slot_for(s);
      linalg::Vec coords = to_coords(slot, e);
      linalg::Vec r = slot.space.reduce(coords);
      if (linalg::is_zero(r)) continue;
      slot.space.insert(r);
      grown.push_back(from_coords(slot, s, r));
    }
    return grown;
  }

  // Row-reduced basis of the span at exponent s.
  std::vector<ShiftedVector> basis_at(HalfInt s) const {
    const auto& slot = slot_for(s);
    std::vector<ShiftedVector> out;
    for (const auto& [piv, row] : slot.space.rows()) out.push_back(from_coords(slot, s, row));
    return out;
  }

  bool contains(const ShiftedVector& v) const {
    for (const auto& [s, e] : v.by_exponent()) {
      const auto& slot = slot_for(s);
      if (!slot.space.contains(to_coords(slot, e))) return false;
    }
    return true;
  }

  // Row-reduced dump with the basis ordering spelled out per exponent.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["format"] = "nsrep-banded-subspace-1";
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [s, slot] : slots_) {
      nlohmann::ordered_json e;
      e["exponent"] = s.to_string();
      auto basis = nlohmann::ordered_json::array();
      for (const auto& m : slot.monomials) basis.push_back(m.to_string());
      e["basis"] = std::move(basis);
      auto rows = nlohmann::ordered_json::array();
      for (const auto& [piv, row] : slot.space.rows()) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& x : row) r.push_back(x.to_string());
        rows.push_back(std::move(r));
      }
      e["rows"] = std::move(rows);
      arr.push_back(std::move(e));
    }
    j["exponents"] = std::move(arr);
    return j;
  }

private:
  struct Slot {
    std::vector<PbwMonomial> monomials;
    std::map<PbwMonomial, std::size_t> index;
    linalg::Subspace space;
  };

  Slot& slot_for(HalfInt s) {
    auto it = slots_.find(s);
    if (it == slots_.end()) throw OutOfBand("exponent " + s.to_string() + " outside band");
    return it->second;
  }
  const Slot& slot_for(HalfInt s) const {
    auto it = slots_.find(s);
    if (it == slots_.end()) throw OutOfBand("exponent " + s.to_string() + " outside band");
    return it->second;
  }

  linalg::Vec to_coords(const Slot& slot, const EnvElement& e) const {
    linalg::Vec v(slot.monomials.size());
    for (const auto& [m, c] : e.terms()) {
      auto it = slot.index.find(m);
      if (it == slot.index.end()) {
        if (m.level() > mod_->params().level_cap)
          throw TruncationOverflow("level " + m.level().to_string() + " exceeds cap");
        throw Error("vector is not reduced: " + m.to_string());
      }
      v[it->second] = c;
    }
    return v;
  }

  static ShiftedVector from_coords(const Slot& slot, HalfInt s, const linalg::Vec& v) {
    ShiftedVector out;
    for (std::size_t i = 0; i < v.size(); ++i) out.add(s, slot.monomials[i], v[i]);
    return out;
  }

  const ShiftedModule* mod_;
  std::map<HalfInt, Slot> slots_;
};

/// Inner approximation of the submodule generated by the seeds within the
/// band: E_k (0 < |k| <= kMax) act until the span is stable. Per exponent
/// and generator, only the part of the span whose image stays under the level
/// cap is pushed forward (the kernel of the overflow component); images that
/// leave the band are discarded.
inline BandedSubspace submodule_closure(const ShiftedModule& mod, const std::vector<ShiftedVector>& seeds) {
  BandedSubspace span(mod);
  const auto& p = mod.params();
  std::vector<Generator> gens;
  for (std::int64_t t = -p.k_max.twice(); t <= p.k_max.twice(); ++t)
    if (t != 0) gens.push_back(Generator::E(HalfInt::from_twice(t)));

  std::set<HalfInt> dirty;
  for (const auto& seed : seeds) {
    ShiftedVector r = mod.reduce(seed);
    for (const auto& [s, e] : r.by_exponent())
      if (!p.in_band(s)) throw OutOfBand("seed exponent " + s.to_string() + " outside band");
    for (const auto& g : span.insert(r)) dirty.insert(g.terms().begin()->first.first);
  }
  while (!dirty.empty()) {
    const HalfInt s = *dirty.begin();
    dirty.erase(dirty.begin());
    const auto rows = span.basis_at(s);
    for (const auto& g : gens) {
      const HalfInt t = s + g.index();
      if (!p.in_band(t)) continue;
      std::vector<ShiftedVector> low;
      std::map<ShiftedVector::Key, std::size_t> high_index;
      std::vector<ShiftedVector> high;
      for (const auto& row : rows) {
        auto [lo, hi] = mod.split(mod.apply_raw(g, row));
        for (const auto& [k, c] : hi.terms()) high_index.emplace(k, high_index.size());
        low.push_back(std::move(lo));
        high.push_back(std::move(hi));
      }
      std::vector<linalg::Vec> combos;
      if (high_index.empty()) {
        for (std::size_t j = 0; j < rows.size(); ++j) {
          linalg::Vec e(rows.size());
          e[j] = 1;
          combos.push_back(std::move(e));
        }
      } else {
        linalg::Matrix h(high_index.size(), rows.size());
        for (std::size_t j = 0; j < rows.size(); ++j)
          for (const auto& [k, c] : high[j].terms()) h(high_index.at(k), j) = c;
        combos = linalg::kernel(h);
      }
      for (const auto& combo : combos) {
        ShiftedVector img;
        for (std::size_t j = 0; j < combo.size(); ++j)
          if (!combo[j].is_zero()) img.add_scaled(low[j], combo[j]);
        if (img.is_zero()) continue;
        if (!span.insert(img).empty()) dirty.insert(t);
      }
    }
  }
  return span;
}

/// Membership in a closure; vectors must lie inside the band.
inline bool contains(const BandedSubspace& span, const ShiftedVector& v) {
  for (const auto& [k, c] : v.terms())
    if (!span.params().in_band(k.first)) throw OutOfBand("exponent " + k.first.to_string() + " outside band");
  return span.contains(v);
}

/// Copy of p whose action never overflows within `steps` applications of
/// generators of |index| <= gen_bound to vectors at level <= p.level_cap.
inline ShiftedParams widened(const ShiftedParams& p, HalfInt gen_bound, int steps, SingularCache* cache = nullptr) {
  ShiftedParams w = p;
  for (int i = 0; i < steps; ++i) w.level_cap += gen_bound;
  if (w.variant == HighestWeightVariant::simple && w.report->max_level < w.level_cap)
    w.report = std::make_shared<SingularVectorReport>(maximal_submodule_report(w.verma, w.level_cap, cache));
  return w;
}

// Basis vectors in the band at level <= cap.
inline std::vector<ShiftedVector> banded_basis(const ShiftedModule& mod, HalfInt cap) {
  std::vector<ShiftedVector> out;
  const auto& p = mod.params();
  for (HalfInt s = p.band_low(); s <= p.band_high(); s += HalfInt::half())
    for (auto& v : mod.weight_space_basis(s))
      if (v.terms().begin()->first.second.level() <= cap) out.push_back(std::move(v));
  return out;
}

/// The module axiom for the shifted action: all generator pairs with
/// |index| <= gen_bound on every banded basis vector of level <= levelCap.
inline CheckResult shifted_axiom_check(const ShiftedParams& p, HalfInt gen_bound, const BracketFn& br = bracket,
                                       SingularCache* cache = nullptr) {
  CheckResult r;
  ShiftedModule mod(widened(p, gen_bound, 2, cache));
  auto act = [&](const Generator& g, const ShiftedVector& v) { return mod.apply(g, v); };
  const auto gens = generators_within(gen_bound.twice());
  for (const auto& v : banded_basis(mod, p.level_cap))
    for (const auto& g1 : gens)
      for (const auto& g2 : gens) {
        ++r.checked;
        if (!module_residual(act, g1, g2, v, br).is_zero())
          r.fail("shifted " + p.sa.to_string() + " " + g1.to_string() + " " + g2.to_string() + " " + v.to_string());
      }
  return r;
}

/// The tensor-to-shifted map intertwines the Leibniz action on V (x) SA with the
/// shifted action, on the same vectors and generators.
inline CheckResult intertwining_check(const ShiftedParams& p, HalfInt gen_bound, SingularCache* cache = nullptr) {
  CheckResult r;
  ShiftedModule mod(widened(p, gen_bound, 1, cache));
  for (const auto& v : banded_basis(mod, p.level_cap)) {
    TensorVector tv = ShiftedModule::from_shifted(v);
    for (const auto& g : generators_within(gen_bound.twice())) {
      ++r.checked;
      if (mod.reduce(ShiftedModule::to_shifted(mod.tensor_apply(g, tv))) != mod.apply(g, v))
        r.fail("intertwining " + p.sa.to_string() + " " + g.to_string() + " " + v.to_string());
    }
  }
  return r;
}

/// Closure of W^(s): seeds u (x) t^k for every k > s in the band.
inline BandedSubspace filtration_closure(const ShiftedModule& mod, HalfInt s) {
  std::vector<ShiftedVector> seeds;
  for (HalfInt k = s + HalfInt::half(); k <= mod.params().band_high(); k += HalfInt::half())
    seeds.push_back(mod.reduce(ShiftedVector::unit(k)));
  return submodule_closure(mod, seeds);
}

/// Whether the closure of W^(s) misses u (x) t^s, i.e. exhibits a proper
/// piece of the filtration.
inline bool filtration_step_proper(const ShiftedModule& mod, HalfInt s) {
  ShiftedVector u = mod.reduce(ShiftedVector::unit(s));
  if (u.is_zero()) return false;
  return !contains(filtration_closure(mod, s), u);
}

/// Whether every nonzero seed u (x) t^k in the band generates a closure
/// containing every u (x) t^j in the band (evidence of simplicity).
inline bool single_seed_saturates(const ShiftedModule& mod) {
  const auto& p = mod.params();
  for (HalfInt k = p.band_low(); k <= p.band_high(); k += HalfInt::half()) {
    ShiftedVector seed = mod.reduce(ShiftedVector::unit(k));
    if (seed.is_zero()) continue;
    BandedSubspace span = submodule_closure(mod, {seed});
    for (HalfInt j = p.band_low(); j <= p.band_high(); j += HalfInt::half())
      if (!contains(span, mod.reduce(ShiftedVector::unit(j)))) return false;
  }
  return true;
}

/// True iff u (x) t^{m-1/2} is not in the closure of u (x) t^m: the cyclic
/// submodule generated by u (x) t^m is proper. The band is centred at m.
inline bool reducibility_witness(ShiftedParams params, HalfInt m) {
  if (params.variant != HighestWeightVariant::verma) throw Error("reducibility witness needs the Verma variant");
  params.band_center = m;
  ShiftedModule mod(params);
  ShiftedVector seed = mod.reduce(ShiftedVector::unit(m));
  if (seed.is_zero()) throw Error("u (x) t^" + m.to_string() + " vanishes in this module");
  auto span = submodule_closure(mod, {seed});
  return !contains(span, mod.reduce(ShiftedVector::unit(m - HalfInt::half())));
}

/// Dimension of the space of weight-preserving maps psi on the banded
/// truncation with psi E_k = E_k psi (0 < |k| <= kMax) between exponents
/// inside the band. Images above the level cap are projected away.
inline std::size_t end_space_dimension(const ShiftedModule& mod, HalfInt k_max) {
  const auto& p = mod.params();
  if (p.band_radius < k_max + HalfInt(1)) throw Error("band radius must be at least kMax + 1");
  std::map<HalfInt, std::vector<PbwMonomial>> basis;
  std::map<HalfInt, std::map<PbwMonomial, std::size_t>> index;
  std::map<HalfInt, std::size_t> offset;
  std::size_t unknowns = 0;
  for (HalfInt s = p.band_low(); s <= p.band_high(); s += HalfInt::half()) {
    basis[s] = mod.weight_space_monomials(s);
    for (std::size_t i = 0; i < basis[s].size(); ++i) index[s].emplace(basis[s][i], i);
    offset[s] = unknowns;
    unknowns += basis[s].size() * basis[s].size();
  }
  // unknown psi_s(i, j): row i, column j, dims d_s x d_s
  auto var = [&](HalfInt s, std::size_t i, std::size_t j) { return offset[s] + i * basis[s].size() + j; };

  // A_k: W_s -> W_{s+k}, truncated at the cap
  auto action = [&](const Generator& g, HalfInt s) {
    HalfInt t = s + g.index();
    linalg::Matrix a(basis[t].size(), basis[s].size());
    for (std::size_t j = 0; j < basis[s].size(); ++j) {
      ShiftedVector img = mod.project(mod.apply_raw(g, ShiftedVector(basis[s][j], s)));
      for (const auto& [k, c] : img.terms()) a(index[t].at(k.second), j) = c;
    }
    return a;
  };

  linalg::SparseRank sys(unknowns);
  for (HalfInt s = p.band_low(); s <= p.band_high(); s += HalfInt::half())
    for (std::int64_t tk = -k_max.twice(); tk <= k_max.twice(); ++tk) {
      if (tk == 0) continue;
      Generator g = Generator::E(HalfInt::from_twice(tk));
      HalfInt t = s + g.index();
      if (!p.in_band(t)) continue;
      linalg::Matrix a = action(g, s);
      const std::size_t ds = basis[s].size(), dt = basis[t].size();
      // (psi_t A)(i,j) - (A psi_s)(i,j) = 0
      for (std::size_t i = 0; i < dt; ++i)
        for (std::size_t j = 0; j < ds; ++j) {
          linalg::SparseRank::Row row;
          for (std::size_t l = 0; l < dt; ++l)
            if (!a(l, j).is_zero()) row[var(t, i, l)] += a(l, j);
          for (std::size_t l = 0; l < ds; ++l)
            if (!a(i, l).is_zero()) row[var(s, l, j)] -= a(i, l);
          sys.add(std::move(row));
        }
    }
  return sys.nullity();
}

} // namespace nsrep
