#pragma once

// Generic bracket-compatibility residual for a module action:
//   g1(g2 v) - (-1)^{|g1||g2|} g2(g1 v) - [g1,g2] v.

#include "nsrep/nsalgebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nsrep {

template <class Vector, class Action>
Vector module_residual(const Action& act, const Generator& g1, const Generator& g2, const Vector& v,
                       const BracketFn& br = bracket) {
  Vector out = act(g1, act(g2, v));
  out.add_scaled(act(g2, act(g1, v)), Rational(-super_sign(g1.parity(), g2.parity())));
  for (const auto& [g, c] : br(g1, g2)) out.add_scaled(act(g, v), -c);
  return out;
}

/// Outcome of an identity sweep: how many instances were checked and the
/// first one that failed, if any.
struct CheckResult {
  std::size_t checked = 0;
  std::optional<std::string> first_failure;

  bool ok() const { return !first_failure.has_value(); }
  void fail(std::string what) {
    if (!first_failure) first_failure = std::move(what);
  }
};

/// C, then E_k for -bound <= k <= bound in half steps (bound in twice-units).
inline std::vector<Generator> generators_within(std::int64_t twice_bound) {
  std::vector<Generator> out{Generator::C()};
  for (std::int64_t t = -twice_bound; t <= twice_bound; ++t) out.push_back(Generator::E(HalfInt::from_twice(t)));
  return out;
}

/// Super-antisymmetry over pairs and super-Jacobi over triples of
/// generators with |index| <= twice_bound / 2.
inline CheckResult superalgebra_check(std::int64_t twice_bound, const BracketFn& br = bracket) {
  CheckResult r;
  const auto gens = generators_within(twice_bound);
  for (const auto& x : gens)
    for (const auto& y : gens) {
      ++r.checked;
      if (!antisymmetry_residual(x, y, br).empty())
        r.fail("antisymmetry " + x.to_string() + " " + y.to_string());
    }
  for (const auto& x : gens)
    for (const auto& y : gens)
      for (const auto& z : gens) {
        ++r.checked;
        if (!super_jacobi_residual(x, y, z, br).empty())
          r.fail("jacobi " + x.to_string() + " " + y.to_string() + " " + z.to_string());
      }
  return r;
}

} // namespace nsrep
