#pragma once

// Verma modules M(c,h) over the Neveu-Schwarz algebra, exact singular
// vector search, and level-truncated simple quotients V(c,h).

#include "nsrep/cache.hpp"
#include "nsrep/errors.hpp"
#include "nsrep/exactnum.hpp"
#include "nsrep/linalg.hpp"
#include "nsrep/nsalgebra.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace nsrep {

struct VermaParams {
  Rational c;
  Rational h;
  friend bool operator==(const VermaParams&, const VermaParams&) = default;
};

namespace detail {

inline void enumerate_l_parts(std::int64_t budget, std::int64_t max_part, Word& cur, std::vector<Word>& out) {
  if (budget == 0) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t p = std::min(budget, max_part); p >= 1; --p) {
    cur.push_back(static_cast<Factor>(2 * p));
    enumerate_l_parts(budget - p, p, cur, out);
    cur.pop_back();
  }
}

// distinct odd parts (twice-values) summing to budget, strictly decreasing
inline void enumerate_g_parts(std::int64_t budget, std::int64_t max_part, Word& cur, std::vector<Word>& out) {
  if (budget == 0) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t p = std::min(budget, max_part); p >= 1; --p) {
    if (p % 2 == 0) continue;
    cur.push_back(static_cast<Factor>(p));
    enumerate_g_parts(budget - p, p - 2, cur, out);
    cur.pop_back();
  }
}

inline bool basis_order(const PbwMonomial& a, const PbwMonomial& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  Word la, lb, ga, gb;
  for (Factor f : a.factors()) (is_odd_factor(f) ? ga : la).push_back(f);
  for (Factor f : b.factors()) (is_odd_factor(f) ? gb : lb).push_back(f);
  if (la != lb) return std::lexicographical_compare(lb.begin(), lb.end(), la.begin(), la.end());
  return std::lexicographical_compare(gb.begin(), gb.end(), ga.begin(), ga.end());
}

} // namespace detail

/// PBW basis of M(c,h) at level N: super-partitions of N, ordered by
/// factor count, then L-part and G-part in reverse-lexicographic order.
inline const std::vector<PbwMonomial>& level_basis(HalfInt level) {
  if (level < HalfInt(0)) throw NegativeLevel();
  thread_local std::map<HalfInt, std::vector<PbwMonomial>> memo;
  if (auto it = memo.find(level); it != memo.end()) return it->second;
  const std::int64_t total = level.twice();
  std::vector<PbwMonomial> out;
  for (std::int64_t lt = 0; lt <= total; lt += 2) {
    std::vector<Word> ls, gs;
    Word cur;
    detail::enumerate_l_parts(lt / 2, lt / 2, cur, ls);
    cur.clear();
    detail::enumerate_g_parts(total - lt, total - lt, cur, gs);
    for (const auto& l : ls)
      for (const auto& g : gs) {
        Word w = l;
        w.insert(w.end(), g.begin(), g.end());
        out.emplace_back(std::move(w));
      }
  }
  std::sort(out.begin(), out.end(), detail::basis_order);
  return memo.emplace(level, std::move(out)).first->second;
}

inline std::map<PbwMonomial, std::size_t> basis_index(HalfInt level) {
  std::map<PbwMonomial, std::size_t> idx;
  const auto& b = level_basis(level);
  for (std::size_t i = 0; i < b.size(); ++i) idx.emplace(b[i], i);
  return idx;
}

/// Coordinates of a level-homogeneous element in level_basis(level).
inline linalg::Vec coordinates(const EnvElement& e, HalfInt level) {
  const auto& b = level_basis(level);
  linalg::Vec v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) v[i] = e.coefficient(b[i]);
  for (const auto& [m, c] : e.terms())
    if (m.level() != level) throw Error("element has a term outside level " + level.to_string());
  return v;
}

inline EnvElement from_coordinates(const linalg::Vec& v, HalfInt level) {
  const auto& b = level_basis(level);
  EnvElement e;
  for (std::size_t i = 0; i < b.size(); ++i) e.add(b[i], v[i]);
  return e;
}

/// Split an element into its level-homogeneous components.
inline std::map<HalfInt, EnvElement> by_level(const EnvElement& e) {
  std::map<HalfInt, EnvElement> out;
  for (const auto& [m, c] : e.terms()) out[m.level()].add(m, c);
  return out;
}

/// The Verma module M(c,h). Vectors are elements p of U(n-) standing for p*u.
/// With [L_m,L_n] = (n-m)L_{m+n}, negative modes lower the L_0-eigenvalue:
/// L_0 pu = (h + deg p) pu. Positive-mode actions are memoised per monomial.
class VermaModule {
public:
  explicit VermaModule(VermaParams params) : p_(std::move(params)) {}

  const VermaParams& params() const { return p_; }

  EnvElement apply(const Generator& g, const EnvElement& v) const {
    EnvElement out;
    for (const auto& [m, c] : v.terms()) out.add_scaled(apply(g, m), c);
    return out;
  }

  EnvElement apply(const Generator& g, const PbwMonomial& m) const {
    switch (g.kind()) {
      case GenKind::C: return EnvElement(m, p_.c);
      case GenKind::L:
        if (g.index() == HalfInt(0)) return EnvElement(m, p_.h + m.degree().to_rational());
        break;
      case GenKind::G: break;
    }
    if (g.index() < HalfInt(0)) return left_multiply(static_cast<Factor>((-g.index()).twice()), m);
    return positive(g, m);
  }

private:
  const EnvElement& positive(const Generator& g, const PbwMonomial& m) const {
    auto key = std::make_pair(g, m);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    EnvElement out;
    if (!m.is_identity()) {
      // g f rest u = [g,f] rest u + (-1)^{|g||f|} f (g rest u)
      const Word& w = m.factors();
      Factor f = w.front();
      PbwMonomial rest(Word(w.begin() + 1, w.end()));
      for (const auto& [g2, coef] : bracket(g, factor_generator(f))) out.add_scaled(apply(g2, rest), coef);
      int sign = super_sign(g.parity(), f & 1);
      out.add_scaled(left_multiply(f, positive(g, rest)), Rational(sign));
    }
    return cache_.emplace(std::move(key), std::move(out)).first->second;
  }

  VermaParams p_;
  mutable std::map<std::pair<Generator, PbwMonomial>, EnvElement> cache_;
};

/// Matrix of a generator from level `from` to level `from + deg g`, in
/// level_basis coordinates (rows: target basis, columns: source basis).
inline linalg::Matrix action_matrix(const VermaModule& M, const Generator& g, HalfInt from) {
  HalfInt to = from + g.degree();
  const auto& src = level_basis(from);
  if (to < HalfInt(0)) return linalg::Matrix(0, src.size());
  const auto& dst = level_basis(to);
  linalg::Matrix mat(dst.size(), src.size());
  auto idx = basis_index(to);
  for (std::size_t j = 0; j < src.size(); ++j) {
    EnvElement img = M.apply(g, src[j]);
    for (const auto& [m, c] : img.terms()) mat(idx.at(m), j) = c;
  }
  return mat;
}

/// Basis of singular vectors at level N: the joint kernel of G_{1/2} and
/// G_{3/2}, which generate n+.
inline std::vector<EnvElement> singular_vectors_at_level(const VermaParams& params, HalfInt level) {
  if (level <= HalfInt(0)) throw Error("singular vectors are searched at positive levels only");
  VermaModule M(params);
  const auto& src = level_basis(level);
  linalg::Matrix sys(0, src.size());
  for (HalfInt k : {HalfInt::from_twice(1), HalfInt::from_twice(3)}) {
    if (level - k < HalfInt(0)) continue;
    // rows of G_k acting on level N
    const auto& dst = level_basis(level - k);
    auto idx = basis_index(level - k);
    std::vector<linalg::Vec> rows(dst.size(), linalg::Vec(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j) {
      EnvElement img = M.apply(Generator::G(k), src[j]);
      for (const auto& [m, c] : img.terms()) rows[idx.at(m)][j] = c;
    }
    for (auto& r : rows) sys.append_row(r);
  }
  std::vector<EnvElement> out;
  std::vector<linalg::Vec> ker;
  if (sys.rows() == 0) {
    for (std::size_t j = 0; j < src.size(); ++j) {
      linalg::Vec v(src.size());
      v[j] = 1;
      ker.push_back(std::move(v));
    }
  } else {
    ker = linalg::kernel(sys);
  }
  for (const auto& v : ker) {
    EnvElement e = from_coordinates(v, level);
    for (const Generator& g : {Generator::L(1), Generator::L(2), Generator::G(HalfInt::from_twice(5))})
      if (!M.apply(g, e).is_zero()) throw Error("singular vector check failed for " + g.to_string());
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<EnvElement> singular_vectors_at_level(const VermaParams& params, HalfInt level,
                                                         SingularCache* cache) {
  if (cache == nullptr) return singular_vectors_at_level(params, level);
  if (auto hit = cache->lookup(params.c, params.h, level)) return *hit;
  auto basis = singular_vectors_at_level(params, level);
  cache->store(params.c, params.h, level, basis);
  return basis;
}

struct SingularLevelEntry {
  HalfInt level;
  std::vector<EnvElement> basis; // new generators found at this level
};

/// Singular-vector scan up to a level bound, with the truncated maximal
/// submodule J generated by everything found.
struct SingularVectorReport {
  VermaParams params;
  HalfInt max_level;
  std::vector<SingularLevelEntry> entries;
  std::vector<EnvElement> selected_q; // Q_1 (and Q_2 if distinct); empty means Q_1 = Q_2 = 0
  // Truncated J: one subspace of level_basis coordinates per level 0..max_level.
  std::map<HalfInt, linalg::Subspace> submodule;

  std::vector<EnvElement> generators() const {
    std::vector<EnvElement> out;
    for (const auto& e : entries) out.insert(out.end(), e.basis.begin(), e.basis.end());
    return out;
  }
  bool has_generators() const { return !entries.empty(); }
  // More than two independent generators were needed below the bound.
  bool extra_generators() const { return generators().size() > 2; }
};

namespace detail {
inline void add_generator_span(std::map<HalfInt, linalg::Subspace>& sub, const EnvElement& q, HalfInt q_level,
                               HalfInt max_level) {
  for (HalfInt n = q_level; n <= max_level; n += HalfInt::half()) {
    for (const auto& m : level_basis(n - q_level)) {
      EnvElement pq = multiply_word(m.factors(), q);
      sub.at(n).insert(coordinates(pq, n));
    }
  }
}
} // namespace detail

inline SingularVectorReport maximal_submodule_report(const VermaParams& params, HalfInt max_level,
                                                     SingularCache* cache = nullptr) {
  if (max_level < HalfInt::half()) throw Error("maxLevel must be at least 1/2");
  SingularVectorReport rep;
  rep.params = params;
  rep.max_level = max_level;
  for (HalfInt n = 0; n <= max_level; n += HalfInt::half())
    rep.submodule.emplace(n, linalg::Subspace(level_basis(n).size()));
  for (HalfInt n = HalfInt::half(); n <= max_level; n += HalfInt::half()) {
    SingularLevelEntry entry{n, {}};
    for (auto& v : singular_vectors_at_level(params, n, cache)) {
      if (rep.submodule.at(n).contains(coordinates(v, n))) continue;
      detail::add_generator_span(rep.submodule, v, n, max_level);
      entry.basis.push_back(std::move(v));
    }
    if (!entry.basis.empty()) rep.entries.push_back(std::move(entry));
  }
  auto gens = rep.generators();
  for (std::size_t i = 0; i < gens.size() && i < 2; ++i) rep.selected_q.push_back(gens[i]);
  return rep;
}

/// Coset representatives of a basis of M_{h+N} / J_{h+N}: the monomials
/// off the pivot columns of the reduced J.
inline std::vector<EnvElement> quotient_level_basis(const SingularVectorReport& rep, HalfInt level) {
  if (level > rep.max_level)
    throw LevelExceedsBound("level " + level.to_string() + " exceeds report bound " + rep.max_level.to_string());
  if (level < HalfInt(0)) throw NegativeLevel();
  const auto& basis = level_basis(level);
  const auto& sub = rep.submodule.at(level);
  std::vector<bool> pivot(basis.size(), false);
  for (auto p : sub.pivots()) pivot[p] = true;
  std::vector<EnvElement> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!pivot[i]) out.emplace_back(basis[i]);
  return out;
}

/// Canonical representative of e (any levels <= bound) modulo truncated J.
inline EnvElement reduce_mod_submodule(const SingularVectorReport& rep, const EnvElement& e) {
  EnvElement out;
  for (const auto& [n, part] : by_level(e)) {
    if (n > rep.max_level)
      throw LevelExceedsBound("level " + n.to_string() + " exceeds report bound " + rep.max_level.to_string());
    out += from_coordinates(rep.submodule.at(n).reduce(coordinates(part, n)), n);
  }
  return out;
}

} // namespace nsrep
