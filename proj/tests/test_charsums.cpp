#include "ffhyper/charsums.hpp"

#include <gtest/gtest.h>

using namespace ffhyper;

namespace {

const std::vector<std::pair<int, int>> kFoundation = {{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3},
                                                      {3, 2}, {11, 1}, {13, 1}, {2, 4}};

}  // namespace

TEST(Gauss, SmallValues) {
  auto t = SumTables::build(build_field(3, 1));
  const int N = t->N();
  EXPECT_TRUE(t->gauss(eps()).is_one());
  EXPECT_EQ(t->gauss_circ(eps()), CycNum::from_int(N, 3));
  // g(phi) = -(zeta_3 * phi(1) + zeta_3^2 * phi(2)) = zeta_3^2 - zeta_3.
  CycNum g = zeta_power(N, 4) - zeta_power(N, 2);
  EXPECT_EQ(t->gauss({1}), g);
  EXPECT_EQ(g * g, CycNum::from_int(N, -3));
}

TEST(Gauss, Inversion) {
  for (auto [p, r] : kFoundation) {
    auto k = build_field(p, r);
    auto t = SumTables::build(k);
    for (auto e : char_group(*k)) {
      const CycNum lhs = t->gauss(e) * t->gauss_circ(char_conj(*k, e));
      const CycNum rhs = mul_char_eval(*k, e, k->neg(k->one())) * CycNum::from_int(k->N(), k->q());
      EXPECT_EQ(lhs, rhs) << "q=" << k->q() << " j=" << e.j;
      EXPECT_EQ(t->gauss(e), gauss_sum_direct(*k, {}, e));
      EXPECT_TRUE((t->gauss(e) * t->gauss_inv(e)).is_one());
      EXPECT_TRUE((t->gauss_circ(e) * t->gauss_circ_inv(e)).is_one());
      if (e.j) EXPECT_EQ(t->gauss_circ(e), t->gauss(e));
    }
  }
}

TEST(Jacobi, SmallValues) {
  auto t = SumTables::build(build_field(3, 1));
  std::vector<MulChar> ee{eps(), eps()}, ff{{1}, {1}};
  EXPECT_EQ(t->jacobi(ee), CycNum::from_int(t->N(), -1));
  EXPECT_EQ(t->jacobi(ff), CycNum::from_int(t->N(), -1));
  EXPECT_EQ(jacobi_bruteforce(t->field(), ee), CycNum::from_int(t->N(), -1));
}

TEST(Jacobi, MatchesBruteForce) {
  for (auto [p, r] : std::vector<std::pair<int, int>>{{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    auto k = build_field(p, r);
    auto t = SumTables::build(k);
    for (auto a : char_group(*k)) {
      for (auto b : char_group(*k)) {
        std::vector<MulChar> v{a, b};
        EXPECT_EQ(t->jacobi(v), jacobi_bruteforce(*k, v));
        if (k->q() <= 7) {
          for (auto c : char_group(*k)) {
            std::vector<MulChar> w{a, b, c};
            EXPECT_EQ(t->jacobi(w), jacobi_bruteforce(*k, w));
          }
        }
      }
    }
  }
}

TEST(Pochhammer, ChainAndInversion) {
  for (auto [p, r] : std::vector<std::pair<int, int>>{{3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}}) {
    auto k = build_field(p, r);
    auto t = SumTables::build(k);
    const CycNum one = t->one();
    for (auto a : char_group(*k)) {
      EXPECT_TRUE(t->poch(a, eps()).is_one());
      for (auto n : char_group(*k)) {
        EXPECT_EQ(t->poch(a, n), t->gauss(char_mul(*k, a, n)) / t->gauss(a));
        EXPECT_EQ(t->poch_circ(a, n), t->gauss_circ(char_mul(*k, a, n)) / t->gauss_circ(a));
        EXPECT_EQ(t->poch(a, n) * t->poch_inv(a, n), one);
        EXPECT_EQ(t->poch_circ(a, n) * t->poch_circ_inv(a, n), one);
        // (a)_n = n(-1) / (conj a)°_{conj n}
        EXPECT_EQ(t->poch(a, n) * t->poch_circ(char_conj(*k, a), char_conj(*k, n)),
                  mul_char_eval(*k, n, k->neg(k->one())));
        for (auto mu : char_group(*k)) {
          EXPECT_EQ(t->poch(a, char_mul(*k, n, mu)), t->poch(a, n) * t->poch(char_mul(*k, a, n), mu));
          EXPECT_EQ(t->poch_circ(a, char_mul(*k, n, mu)), t->poch_circ(a, n) * t->poch_circ(char_mul(*k, a, n), mu));
        }
      }
    }
  }
}

TEST(Pochhammer, Duplication) {
  for (auto [p, r] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}}) {
    auto k = build_field(p, r);
    auto t = SumTables::build(k);
    const MulChar phi = quadratic(*k);
    const FqElem four = k->from_int(4);
    for (auto a : char_group(*k)) {
      const MulChar a2 = char_pow(*k, a, 2), aphi = char_mul(*k, a, phi);
      const CycNum a4 = mul_char_eval(*k, a, four);
      EXPECT_EQ(t->gauss(a2), a4 * t->gauss(a) * t->gauss(aphi) / t->gauss(phi));
      EXPECT_EQ(t->gauss_circ(a2), a4 * t->gauss_circ(a) * t->gauss_circ(aphi) / t->gauss(phi));
      // With g instead of g° on the a*phi factor the relation breaks exactly at a = phi.
      const bool plain = t->gauss_circ(a2) == a4 * t->gauss_circ(a) * t->gauss(aphi) / t->gauss(phi);
      EXPECT_EQ(plain, a != phi);
      for (auto n : char_group(*k)) {
        const MulChar n2 = char_pow(*k, n, 2);
        const CycNum n4 = mul_char_eval(*k, n, four);
        EXPECT_EQ(t->poch(a2, n2), n4 * t->poch(a, n) * t->poch(aphi, n));
        EXPECT_EQ(t->poch_circ(a2, n2), n4 * t->poch_circ(a, n) * t->poch_circ(aphi, n));
      }
    }
  }
}

TEST(Gauss, TwistedAdditiveCharacter) {
  // g_a(e) = conj(e)(a) g_1(e).
  auto k = build_field(7, 1);
  auto t1 = SumTables::build(k);
  for (int a = 1; a < 7; ++a) {
    auto ta = SumTables::build(k, {{a}});
    for (auto e : char_group(*k)) {
      EXPECT_EQ(ta->gauss(e), mul_char_eval(*k, char_conj(*k, e), {a}) * t1->gauss(e));
    }
  }
}
