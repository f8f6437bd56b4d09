#include "ffhyper/characters.hpp"

#include <gtest/gtest.h>

using namespace ffhyper;

TEST(Characters, Basics) {
  auto k = build_field(3, 1);
  const int N = k->N();
  EXPECT_TRUE(mul_char_eval(*k, eps(), {1}).is_one());
  EXPECT_TRUE(mul_char_eval(*k, eps(), k->zero()).is_zero());
  EXPECT_EQ(mul_char_eval(*k, quadratic(*k), {2}), CycNum::from_int(N, -1));
  EXPECT_EQ(add_char_eval(*k, {}, {1}), zeta_power(N, 2));  // zeta_3 inside Q(zeta_6)
  EXPECT_TRUE(add_char_eval(*k, {}, k->zero()).is_one());
}

TEST(Characters, DeltaAndGroup) {
  EXPECT_EQ(delta(eps()), 1);
  auto k5 = build_field(5, 1);
  EXPECT_EQ(delta(quadratic(*k5)), 0);
  EXPECT_EQ(quadratic(*k5).j, 2);
  EXPECT_EQ(char_group(*build_field(3, 1)).size(), 2u);
  auto k4 = build_field(2, 2);
  EXPECT_EQ(char_group(*k4).size(), 3u);
  EXPECT_FALSE(has_quadratic(*k4));
  EXPECT_THROW(quadratic(*k4), std::invalid_argument);
}

TEST(Characters, OrthogonalityAndProducts) {
  for (auto [p, r] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}}) {
    auto k = build_field(p, r);
    const int q = k->q();
    for (auto chi : char_group(*k)) {
      CycNum s = CycNum::zero(k->N());
      for (int x = 1; x < q; ++x) s += mul_char_eval(*k, chi, {x});
      EXPECT_EQ(s, CycNum::from_int(k->N(), (q - 1) * delta(chi)));
      for (auto eta : char_group(*k)) {
        for (int x = 1; x < q; ++x) {
          EXPECT_EQ(mul_char_eval(*k, chi, {x}) * mul_char_eval(*k, eta, {x}),
                    mul_char_eval(*k, char_mul(*k, chi, eta), {x}));
        }
      }
    }
    if (has_quadratic(*k)) {
      EXPECT_EQ(char_mul(*k, quadratic(*k), quadratic(*k)), eps());
      EXPECT_NE(quadratic(*k), eps());
    }
    for (int a = 1; a < q; ++a) {
      for (int x = 0; x < q; ++x) {
        EXPECT_TRUE((add_char_eval(*k, {{a}}, {x}) * add_char_eval(*k, {{a}}, k->neg({x}))).is_one());
        for (int y = 0; y < q; ++y) {
          EXPECT_EQ(add_char_eval(*k, {{a}}, k->add({x}, {y})),
                    add_char_eval(*k, {{a}}, {x}) * add_char_eval(*k, {{a}}, {y}));
        }
      }
      // Nontrivial.
      bool nontrivial = false;
      for (int x = 0; x < q; ++x) nontrivial = nontrivial || !add_char_eval(*k, {{a}}, {x}).is_one();
      EXPECT_TRUE(nontrivial);
    }
  }
}

TEST(Characters, Subfield) {
  auto k = build_field(5, 1);
  EXPECT_TRUE(in_multiplicative_subfield(*k, mul_char_eval(*k, {1}, {2})));
  EXPECT_FALSE(in_multiplicative_subfield(*k, add_char_eval(*k, {}, {1})));
}
