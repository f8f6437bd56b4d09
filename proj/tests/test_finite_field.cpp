#include "ffhyper/finite_field.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace ffhyper;

namespace {

const std::vector<std::pair<int, int>> kFields = {{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2},
                                                  {11, 1}, {13, 1}, {2, 4}, {5, 2}, {3, 3}, {2, 5}, {2, 6}};

}  // namespace

TEST(FiniteField, PrimeFieldGenerators) {
  auto f3 = build_field(3, 1);
  EXPECT_EQ(f3->q(), 3);
  EXPECT_EQ(f3->generator(), FqElem{2});
  auto f5 = build_field(5, 1);
  EXPECT_EQ(f5->generator(), FqElem{2});
  EXPECT_EQ(f5->inv({2}), FqElem{3});
  EXPECT_EQ(f5->dlog({4}), 2);
}

TEST(FiniteField, Moduli) {
  EXPECT_EQ(build_field(2, 2)->modulus(), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(build_field(2, 3)->modulus(), (std::vector<int>{1, 1, 0, 1}));
  EXPECT_EQ(build_field(3, 2)->modulus(), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(build_field(2, 4)->modulus(), (std::vector<int>{1, 1, 0, 0, 1}));
  // F_9 = F_3[x]/(x^2+1): x has order 4, x+1 has order 8.
  EXPECT_EQ(build_field(3, 2)->generator(), FqElem{4});
}

TEST(FiniteField, F4) {
  auto k = build_field(2, 2);
  const FqElem w = k->generator();
  EXPECT_EQ(k->mul(w, k->mul(w, w)), k->one());
  EXPECT_EQ(k->trace(k->one()), 0);
  EXPECT_EQ(k->trace(w), 1);
  EXPECT_EQ(k->trace(k->zero()), 0);
}

TEST(FiniteField, Errors) {
  EXPECT_THROW(build_field(4, 1), std::invalid_argument);
  EXPECT_THROW(build_field(2, 7), std::invalid_argument);
  EXPECT_NO_THROW(build_field(2, 7, {.max_q = 128}));
  auto k = build_field(5, 1);
  EXPECT_THROW(k->inv(k->zero()), std::domain_error);
  EXPECT_THROW(k->dlog(k->zero()), std::domain_error);
  EXPECT_THROW(prime_power(6), std::invalid_argument);
  EXPECT_EQ(prime_power(9), std::make_pair(3, 2));
}

TEST(FiniteField, FieldAxiomsAndTables) {
  for (auto [p, r] : kFields) {
    auto k = build_field(p, r);
    const int q = k->q();
    std::set<int> seen;
    for (int a = 0; a < q; ++a) {
      seen.insert(a);
      const FqElem A{a};
      EXPECT_EQ(k->add(A, k->neg(A)), k->zero());
      EXPECT_EQ(k->coeffs(A).size(), static_cast<size_t>(r));
      EXPECT_EQ(k->from_coeffs(k->coeffs(A)), A);
      // Frobenius fixes the trace.
      EXPECT_EQ(k->trace(k->pow(A, p)), k->trace(A));
      if (a != 0) {
        // Every nonzero element has a multiplicative inverse, by table search.
        bool found = false;
        for (int b = 1; b < q; ++b) found = found || k->mul(A, {b}) == k->one();
        EXPECT_TRUE(found);
        EXPECT_EQ(k->pow(k->generator(), k->dlog(A)), A);
      }
      for (int b = 0; b < q; ++b) {
        const FqElem B{b};
        EXPECT_EQ(k->trace(k->add(A, B)), (k->trace(A) + k->trace(B)) % p);
        if (a && b) EXPECT_EQ(k->dlog(k->mul(A, B)), (k->dlog(A) + k->dlog(B)) % (q - 1));
        for (int c = 0; c < q && q <= 16; ++c) {
          EXPECT_EQ(k->mul(A, k->add(B, {c})), k->add(k->mul(A, B), k->mul(A, {c})));
        }
      }
    }
    EXPECT_EQ(static_cast<int>(seen.size()), q);
    // Generator has exact order q-1.
    for (int e = 1; e < q - 1; ++e) EXPECT_NE(k->pow(k->generator(), e), k->one());
    // Trace is surjective onto F_p.
    std::set<int> traces;
    for (int a = 0; a < q; ++a) traces.insert(k->trace({a}));
    EXPECT_EQ(static_cast<int>(traces.size()), p);
  }
}

TEST(FiniteField, GeneratorRank) {
  auto k0 = build_field(7, 1);
  auto k1 = build_field(7, 1, {.max_q = 64, .generator_rank = 1});
  EXPECT_EQ(k0->generator(), FqElem{3});
  EXPECT_EQ(k1->generator(), FqElem{5});
  EXPECT_THROW(build_field(7, 1, {.max_q = 64, .generator_rank = 2}), std::invalid_argument);
}

TEST(FiniteField, FqWrapper) {
  auto k = build_field(5, 1);
  Fq x(*k, 2), y(*k, 3);
  EXPECT_TRUE(x + y == 0);
  EXPECT_TRUE(x * y == 1);
  EXPECT_TRUE(1 / x == y);
  EXPECT_TRUE((1 - x) == 4);
  EXPECT_THROW(x / Fq(*k, 0), std::domain_error);
}
