#include "ffhyper/cyclotomic.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace ffhyper;

namespace {

using IPoly = std::vector<long long>;

int mobius(int n) {
  int m = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      m = -m;
    }
  }
  if (n > 1) m = -m;
  return m;
}

IPoly imul(const IPoly& a, const IPoly& b) {
  IPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Exact division by a monic polynomial.
IPoly idiv(IPoly a, const IPoly& b) {
  IPoly q(a.size() - b.size() + 1, 0);
  for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    long long c = a[i];
    q[i - b.size() + 1] = c;
    for (size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= c * b[j];
  }
  for (auto v : a) EXPECT_EQ(v, 0);
  return q;
}

// Phi_N = prod_{d | N} (x^d - 1)^{mu(N/d)}, independent of the library's recursion.
IPoly mobius_phi(int n) {
  IPoly num{1}, den{1};
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    IPoly f(d + 1, 0);
    f[0] = -1;
    f[d] = 1;
    int m = mobius(n / d);
    if (m == 1) num = imul(num, f);
    if (m == -1) den = imul(den, f);
  }
  return idiv(num, den);
}

int euler_phi(int n) {
  int c = 0;
  for (int k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

CycNum random_num(int order, std::mt19937_64& rng, int span = 7) {
  std::vector<mpq_class> c(CycloRing::get(order)->degree());
  std::uniform_int_distribution<int> d(-span, span), den(1, 5);
  for (auto& v : c) v = mpq_class(d(rng), den(rng));
  return CycNum::from_coeffs(order, c);
}

}  // namespace

TEST(CyclotomicPolynomial, SmallOrders) {
  EXPECT_EQ(cyclotomic_polynomial(1), CycPoly({-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(3), CycPoly({1, 1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(6), CycPoly({1, -1, 1}));
}

TEST(CyclotomicPolynomial, MatchesMobiusProduct) {
  for (int n = 1; n <= 60; ++n) {
    IPoly ref = mobius_phi(n);
    const CycPoly phi = cyclotomic_polynomial(n);
    ASSERT_EQ(phi.degree() + 1, static_cast<int>(ref.size())) << n;
    for (size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(phi.coeff(static_cast<int>(i)), mpq_class(static_cast<long>(ref[i]))) << n;
  }
}

TEST(CyclotomicPolynomial, DegreeAndDivisibility) {
  for (int n = 1; n <= 60; ++n) {
    const CycPoly phi = cyclotomic_polynomial(n);
    EXPECT_EQ(phi.degree(), euler_phi(n));
    auto [q, r] = CycPoly::divmod(CycPoly::monomial(n) - CycPoly::monomial(0), phi);
    EXPECT_TRUE(r.is_zero()) << n;
  }
}

TEST(CycNum, ZetaPowers) {
  EXPECT_TRUE(zeta_power(4, 0).is_one());
  EXPECT_EQ(zeta_power(4, 2), CycNum::from_int(4, -1));
  EXPECT_TRUE((zeta_power(3, 1) + zeta_power(3, 2) + CycNum::one(3)).is_zero());
  EXPECT_TRUE((zeta_power(5, 1) * zeta_power(5, 4)).is_one());
  for (int n = 1; n <= 60; ++n)
    for (int k = 0; k < n; ++k) ASSERT_TRUE((zeta_power(n, k) * zeta_power(n, n - k)).is_one()) << n << " " << k;
}

TEST(CycNum, ProductAgainstPolynomialReduction) {
  CycNum a = CycNum::one(3) + zeta_power(3, 1);
  CycNum b = CycNum::one(3) + zeta_power(3, 2);
  EXPECT_TRUE((a * b).is_one());
  // (1 + x)(1 + x^2) = 1 + x + x^2 + x^3, reduced mod x^2 + x + 1.
  auto [q, r] = CycPoly::divmod(CycPoly({1, 1, 1, 1}), cyclotomic_polynomial(3));
  EXPECT_EQ(CycNum::from_coeffs(3, r.coeffs()), a * b);
}

TEST(CycNum, RingAxiomsRandomized) {
  std::mt19937_64 rng(7);
  for (int order : {1, 2, 6, 12, 20, 24, 42, 110}) {
    for (int it = 0; it < 20; ++it) {
      CycNum a = random_num(order, rng), b = random_num(order, rng), c = random_num(order, rng);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_TRUE((a + (-a)).is_zero());
      EXPECT_EQ(a - b + b, a);
      // Complex embedding is a ring homomorphism.
      EXPECT_LT(std::abs((a * b).to_complex() - a.to_complex() * b.to_complex()), 1e-6);
    }
  }
}

TEST(CycNum, InverseRandomized) {
  std::mt19937_64 rng(11);
  for (int order : {2, 3, 8, 20, 24, 42, 156}) {
    for (int it = 0; it < 10; ++it) {
      CycNum a = random_num(order, rng);
      if (a.is_zero()) continue;
      EXPECT_TRUE((a * inv(a)).is_one());
    }
  }
  EXPECT_TRUE(inv(CycNum::one(7)).is_one());
  EXPECT_EQ(inv(CycNum::rational(7, mpq_class(3, 5))), CycNum::rational(7, mpq_class(5, 3)));
  EXPECT_EQ(inv(zeta_power(9, 1)), zeta_power(9, 8));
  EXPECT_THROW(inv(CycNum::zero(5)), std::domain_error);
}

TEST(CycNum, AsRational) {
  EXPECT_EQ(*as_rational(CycNum::one(3)), 1);
  EXPECT_FALSE(as_rational(zeta_power(3, 1)).has_value());
  EXPECT_EQ(*as_rational(zeta_power(3, 1) + zeta_power(3, 2)), -1);
}

TEST(CycNum, OrderMismatchRejected) {
  EXPECT_THROW(CycNum::one(3) + CycNum::one(4), std::invalid_argument);
}

TEST(CycNum, LargeCoefficientsPromoteAndDemote) {
  CycNum big = CycNum::from_int(20, 1LL << 62);
  CycNum sq = big * big * zeta_power(20, 3);
  EXPECT_EQ(sq.coeff(3), mpz_class(1) << 124);
  CycNum back = sq * inv(big) * inv(big);
  EXPECT_EQ(back, zeta_power(20, 3));
}

TEST(CycNum, Galois) {
  CycNum z = zeta_power(12, 1);
  EXPECT_EQ(z.galois(5), zeta_power(12, 5));
  std::mt19937_64 rng(3);
  CycNum a = random_num(12, rng), b = random_num(12, rng);
  EXPECT_EQ((a * b).galois(7), a.galois(7) * b.galois(7));
}

TEST(ZetaAccumulator, MatchesDirectSum) {
  std::mt19937_64 rng(5);
  for (int order : {6, 20, 42}) {
    ZetaAccumulator acc(order);
    CycNum ref = CycNum::zero(order);
    for (int it = 0; it < 50; ++it) {
      long k = static_cast<long>(rng() % 300) - 150;
      if (it % 3 == 0) {
        acc.add_unit(k, 3);
        ref += CycNum::from_int(order, 3) * zeta_power(order, k);
      } else {
        CycNum x = random_num(order, rng);
        acc.add(x, k);
        ref += x * zeta_power(order, k);
      }
    }
    EXPECT_EQ(acc.value(), ref);
  }
}

TEST(ZetaAccumulator, SpillsOnOverflow) {
  ZetaAccumulator acc(20);
  CycNum big = CycNum::from_int(20, std::numeric_limits<std::int64_t>::max());
  CycNum ref = CycNum::zero(20);
  for (int i = 0; i < 200; ++i) {
    CycNum x = big * big * big * CycNum::rational(20, mpq_class(1, i + 2));
    acc.add(x, i);
    ref += x.mul_zeta(i);
  }
  EXPECT_EQ(acc.value(), ref);
}
