#include "nsrep/phi.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nsrep;

namespace {

HalfInt hi(std::int64_t twice) { return HalfInt::from_twice(twice); }
EnvElement word(const char* w) { return from_word(parse_word(w)); }

struct Sample {
  HalfInt s;
  Rational a, b;
};

std::vector<Sample> samples(std::size_t n) {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> st(-8, 8), an(-6, 6), ad(1, 4), bn(-4, 4), bd(1, 3);
  std::vector<Sample> out;
  while (out.size() < n) out.push_back({hi(st(rng)), Rational(an(rng), ad(rng)), Rational(bn(rng), bd(rng))});
  return out;
}

// Random raw word of negative modes, twice-magnitudes in [1, 6].
Word random_word(std::mt19937& rng, std::size_t len) {
  std::uniform_int_distribution<int> f(1, 6);
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(f(rng));
  return w;
}

} // namespace

TEST(PhiEval, Examples) {
  for (const auto& [s, a, b] : samples(10)) EXPECT_EQ(phi_eval(EnvElement::one(), s, a, b), Rational(1));
  EXPECT_EQ(phi_eval(word("L-1"), hi(4), 0, 0), Rational(-3));
  // G_{-1/2}: integral s picks up -(a + s + 1 - b); half-odd s gives -1.
  for (const auto& [s, a, b] : samples(20)) {
    Rational expect = s.is_integer() ? -(a + s.to_rational() + Rational(1) - b) : Rational(-1);
    EXPECT_EQ(phi_eval(word("G-1/2"), s, a, b), expect);
  }
  // G_{-1/2} L_{-1} at s = 0, a = b = 0: (-1) * (-2)
  EXPECT_EQ(phi_eval(word("G-1/2 L-1"), hi(0), 0, 0), Rational(2));
}

TEST(PhiEval, AgreesWithStraightening) {
  // phi on a raw word equals phi on its PBW normal form: the functional
  // vanishes on the two-sided relations.
  std::mt19937 rng(7);
  auto pts = samples(20);
  for (int trial = 0; trial < 60; ++trial) {
    Word w = random_word(rng, 1 + trial % 4);
    EnvElement e = from_word(w);
    for (const auto& [s, a, b] : pts) ASSERT_EQ(phi_eval_word(w, s, a, b), phi_eval(e, s, a, b));
  }
}

TEST(PhiEval, IdealIdentities) {
  const std::vector<Word> tails = {{}, {1}, {2}, {1, 2}, {3, 1}, {4}};
  for (const auto& [s, a, b] : samples(20))
    for (const auto& p : tails) {
      for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n)
          ASSERT_TRUE(phi_ideal_residual(PhiIdentity::LL, HalfInt(m), HalfInt(n), p, s, a, b).is_zero());
      for (int m = 1; m <= 4; ++m)
        for (int r = 1; r <= 7; r += 2)
          ASSERT_TRUE(phi_ideal_residual(PhiIdentity::LG, HalfInt(m), hi(r), p, s, a, b).is_zero());
      for (int r = 1; r <= 7; r += 2)
        for (int q = 1; q <= 7; q += 2)
          ASSERT_TRUE(phi_ideal_residual(PhiIdentity::GG, hi(r), hi(q), p, s, a, b).is_zero());
    }
  EXPECT_THROW(phi_ideal_residual(PhiIdentity::GG, HalfInt(1), hi(1), {}, hi(0), 0, 0), Error);
}

TEST(PhiPolynomials, Examples) {
  PhiPolynomial one = phi_polynomials(EnvElement::one(), Rational(1, 3), 0);
  EXPECT_EQ(one.int_class, RatPoly::constant(1));
  EXPECT_EQ(one.half_class, RatPoly::constant(1));
  PhiPolynomial g = phi_polynomials(word("G-1/2"), 0, 0);
  EXPECT_EQ(g.int_class, RatPoly({Rational(-1), Rational(-1)}));
  EXPECT_EQ(g.half_class, RatPoly::constant(-1));
}

TEST(PhiPolynomials, MatchEvaluationAndDegreeBound) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    EnvElement p = from_word(random_word(rng, 1 + trial % 4));
    p.add_scaled(from_word(random_word(rng, 2)), Rational(trial - 5, 3));
    Rational a(trial - 6, 5), b(trial % 3, 2);
    PhiPolynomial poly = phi_polynomials(p, a, b);
    std::size_t longest = 0;
    for (const auto& [m, c] : p.terms()) longest = std::max(longest, m.factors().size());
    EXPECT_LE(poly.int_class.degree(), static_cast<int>(longest));
    EXPECT_LE(poly.half_class.degree(), static_cast<int>(longest));
    for (int t = -40; t < 40; ++t) {
      HalfInt s = hi(t);
      EXPECT_EQ(poly.for_class(class_of(s)).evaluate(s.to_rational()), phi_eval(p, s, a, b));
    }
  }
}

TEST(PhiSet, Examples) {
  EnvElement g = word("G-1/2");
  EXPECT_EQ(phi_set(g, g, 0, 0), (std::set<HalfInt>{HalfInt(-1)}));
  EXPECT_TRUE(phi_set(g, g, Rational(1, 3), 0).empty()); // root -4/3
  EXPECT_EQ(phi_set(g, g, Rational(1, 2), Rational(1, 2)), (std::set<HalfInt>{HalfInt(-1)}));
  // The integral-class root -1/2 at (0,1/2) is not an integer.
  EXPECT_TRUE(phi_set(g, g, 0, Rational(1, 2)).empty());
}

TEST(PhiSet, ExcludedRootRemoved) {
  // At (1/2,1/2): phi_s(L_{-1}) = -(s + 3/2), phi_s(L_{-2}) = -(s + 5/2) on 1/2 + Z,
  // so 2 L_{-1} - L_{-2} vanishes exactly at s = -1/2 there.
  EnvElement q = word("L-1") * Rational(2);
  q.add_scaled(word("L-2"), -1);
  const Rational half(1, 2);
  PhiPolynomial p = phi_polynomials(q, half, half);
  EXPECT_EQ(p.half_class, RatPoly({Rational(-1, 2), Rational(-1)}));
  EXPECT_EQ(p.int_class, RatPoly({Rational(-1, 2), Rational(-1)}));
  EXPECT_TRUE(phi_set({q}, half, half).empty());
  // Without the exclusion the same polynomial has the root.
  EXPECT_EQ(roots_in_half_integers(p.half_class, HalfClass::half_odd), (std::set<HalfInt>{-HalfInt::half()}));
}

TEST(PhiSet, ShiftCovariance) {
  const std::vector<EnvElement> qs = {word("G-1/2"), word("L-1"), word("L-1 G-1/2")};
  for (int an = -4; an <= 4; ++an)
    for (Rational b : {Rational(0), Rational(1, 3), Rational(2)}) {
      Rational a(an, 2);
      for (const auto& q : qs) {
        auto base = phi_set({q}, a, b);
        std::set<HalfInt> shifted;
        for (auto s : base) shifted.insert(s - HalfInt(1));
        EXPECT_EQ(phi_set({q}, a + Rational(1), b), shifted) << q.to_string();
      }
    }
}

TEST(PhiSet, InfiniteClassIsFlagged) {
  EnvElement q = word("G-3/2");
  q.add_scaled(word("G-1/2"), -1); // both are -1 on the half-odd class
  EXPECT_TRUE(phi_polynomials(q, 0, 0).half_class.is_zero());
  EXPECT_THROW(phi_set(q, q, 0, 0), InfinitePhiClass);
  EXPECT_THROW(phi_set(std::vector<EnvElement>{}, 0, 0), Error);
}

TEST(Verdict, Examples) {
  auto v = simplicity_verdict(Rational(7, 3), 0, 0, 0, HalfInt(3));
  ASSERT_FALSE(v.generators.empty());
  EXPECT_EQ(v.generators.front(), word("G-1/2"));
  EXPECT_EQ(v.verdict, Verdict::not_simple);
  EXPECT_EQ(v.phi_set, (std::set<HalfInt>{HalfInt(-1)}));
  EXPECT_EQ(*v.max_phi, HalfInt(-1));

  auto bar = simplicity_verdict(Rational(7, 3), 0, Rational(1, 2), Rational(1, 2), HalfInt(3));
  EXPECT_EQ(bar.excluded_root, -HalfInt::half());
  EXPECT_EQ(bar.verdict, Verdict::not_simple);

  auto generic = simplicity_verdict(Rational(7, 3), 0, Rational(1, 3), 0, HalfInt(3));
  EXPECT_EQ(generic.verdict, Verdict::simple);

  auto verma = simplicity_verdict(Rational(7, 3), Rational(1, 5), 0, 0, HalfInt(3));
  EXPECT_EQ(verma.verdict, Verdict::simple_up_to_level_bound);
  EXPECT_TRUE(verma.phi_set.empty());
}

TEST(Verdict, RecordFields) {
  auto j = simplicity_verdict(Rational(7, 3), 0, 0, 0, HalfInt(3)).to_json();
  EXPECT_EQ(j["schema"], "nsrep-verdict-1");
  EXPECT_EQ(j["verdict"], "notSimple");
  EXPECT_EQ(j["phi_set"], nlohmann::ordered_json::array({"-1"}));
  EXPECT_EQ(j["generators"][0]["int_class"], nlohmann::ordered_json::array({"-1", "-1"}));
  EXPECT_EQ(j["generators"][0]["half_class"], nlohmann::ordered_json::array({"-1"}));
  EXPECT_TRUE(j["excluded_root"].is_null());
}

TEST(Verdict, AgreesWithClosures) {
  struct Point {
    Rational c, h, a, b;
  };
  const std::vector<Point> pts = {{Rational(7, 3), 0, 0, 0},
                                  {Rational(7, 3), 0, Rational(1, 2), Rational(1, 2)},
                                  {Rational(7, 3), 0, Rational(1, 3), 0},
                                  {Rational(7, 3), 0, Rational(3, 4), Rational(1, 2)},
                                  {Rational(7, 3), 0, 0, 2},
                                  {Rational(1, 2), 0, Rational(1, 5), 0}};
  for (const auto& [c, h, a, b] : pts) {
    auto v = simplicity_verdict(c, h, a, b, HalfInt(2));
    auto params = ShiftedParams::make({c, h}, a, b, HighestWeightVariant::simple, HalfInt(2), HalfInt(3));
    ShiftedModule mod(params);
    SCOPED_TRACE(params.sa.to_string());
    if (v.verdict == Verdict::simple) {
      EXPECT_TRUE(single_seed_saturates(mod));
    } else {
      ASSERT_EQ(v.verdict, Verdict::not_simple);
      EXPECT_TRUE(filtration_step_proper(mod, *v.max_phi));
      for (HalfInt s = *v.max_phi + HalfInt::half(); s < params.band_high(); s += HalfInt::half())
        EXPECT_FALSE(filtration_step_proper(mod, s)) << s.to_string();
    }
  }
}

TEST(PhiCongruence, Congruences) {
  auto generic = ShiftedParams::make({Rational(7, 3), 0}, Rational(1, 3), 0, HighestWeightVariant::simple);
  auto verma = ShiftedParams::make({Rational(7, 3), 2}, Rational(1, 3), 0, HighestWeightVariant::verma);
  auto integral = ShiftedParams::make({Rational(1, 2), Rational(1, 3)}, 0, 0, HighestWeightVariant::verma);
  EXPECT_TRUE(phi_congruence_holds(word("G-1/2"), HalfInt(1), generic));
  EXPECT_TRUE(phi_congruence_holds(EnvElement::one(), hi(-3), verma));
  EXPECT_TRUE(phi_congruence_holds(word("L-1"), HalfInt(2), verma));
  int checked = 0;
  for (const auto* params : {&verma, &integral})
    for (const char* w : {"G-1/2", "L-1", "G-3/2", "L-1 G-1/2", "L-2", "L-1^2", "G-3/2 G-1/2"})
      for (std::int64_t t = -2; t <= 2; ++t) {
        EXPECT_TRUE(phi_congruence_holds(word(w), hi(t), *params)) << w << " at " << hi(t).to_string();
        ++checked;
      }
  EXPECT_GE(checked, 10);
}

TEST(PhiCongruence, DistinguishesTheBranches) {
  // With the two G-branches swapped, the congruence fails at both classes.
  auto verma = ShiftedParams::make({Rational(7, 3), 2}, Rational(1, 3), 0, HighestWeightVariant::verma);
  ShiftedModule mod(verma);
  const Rational a = verma.sa.a, b = verma.sa.b;
  for (HalfInt s : {HalfInt(0), hi(1)}) {
    Rational swapped = s.is_integer() ? Rational(-1) : -(a + s.to_rational() - (b - Rational(1, 2)));
    ShiftedVector v;
    v.add(s, word("G-1/2"), 1);
    v.add(s, PbwMonomial(), -swapped);
    EXPECT_FALSE(contains(filtration_closure(mod, s), mod.reduce(v))) << s.to_string();
  }
}
