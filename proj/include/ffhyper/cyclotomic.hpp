#pragma once

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ffhyper {

/// Dense polynomial over Q, lowest degree first. The zero polynomial has no
/// coefficients; otherwise the leading coefficient is nonzero.
class CycPoly {
 public:
  CycPoly() = default;
  explicit CycPoly(std::vector<mpq_class> coeffs);

  static CycPoly monomial(int degree, const mpq_class& c = 1);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpq_class>& coeffs() const { return coeffs_; }
  mpq_class coeff(int i) const;

  friend CycPoly operator+(const CycPoly& a, const CycPoly& b);
  friend CycPoly operator-(const CycPoly& a, const CycPoly& b);
  friend CycPoly operator*(const CycPoly& a, const CycPoly& b);
  friend bool operator==(const CycPoly& a, const CycPoly& b) = default;

  /// Euclidean division; throws std::domain_error when `b` is zero.
  static std::pair<CycPoly, CycPoly> divmod(const CycPoly& a, const CycPoly& b);

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// The N-th cyclotomic polynomial, by recursive division of x^N - 1.
/// Results are memoized process-wide.
CycPoly cyclotomic_polynomial(int n);

/// Arithmetic data for Q[x]/(Phi_N): the integer modulus and its sparse tail.
/// Instances are interned per order and live for the whole process.
class CycloRing {
 public:
  static const CycloRing* get(int order);

  int order() const { return order_; }
  int degree() const { return degree_; }
  std::span<const std::int64_t> modulus() const { return modulus_; }
  /// Nonzero (j, c_j) of Phi_N with j < degree().
  std::span<const std::pair<int, std::int64_t>> tail() const { return tail_; }
  /// exp(2 pi i k / N) for k in [0, N).
  std::complex<double> root(long k) const;

 private:
  explicit CycloRing(int order);

  int order_;
  int degree_;
  std::vector<std::int64_t> modulus_;
  std::vector<std::pair<int, std::int64_t>> tail_;
  std::vector<std::complex<double>> roots_;
};

/// Exact element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^{phi(N)-1}.
///
/// Stored as an integer coefficient vector over a positive common denominator,
/// with gcd(denominator, content) == 1. Values that fit in 64-bit words use a
/// machine-integer representation; anything larger is promoted to GMP. The
/// representation is canonical, so equality is structural.
class CycNum {
 public:
  /// Zero of Q = Q(zeta_1).
  CycNum();

  static CycNum zero(int order);
  static CycNum one(int order);
  static CycNum rational(int order, const mpq_class& r);
  static CycNum from_int(int order, std::int64_t v);
  /// Reduces arbitrary-length coefficients modulo Phi_N.
  static CycNum from_coeffs(int order, std::span<const mpq_class> coeffs);

  int order() const { return ring_->order(); }
  const CycloRing* ring() const { return ring_; }
  std::size_t size() const { return static_cast<std::size_t>(ring_->degree()); }

  std::vector<mpq_class> coeffs() const;
  mpq_class coeff(std::size_t i) const;
  mpz_class denominator() const;
  std::vector<mpz_class> numerators() const;

  bool is_zero() const;
  bool is_one() const;
  std::optional<mpq_class> as_rational() const;

  /// zeta^k * this.
  CycNum mul_zeta(long k) const;
  /// Image under the automorphism zeta -> zeta^a; requires gcd(a, N) == 1.
  CycNum galois(long a) const;
  /// Value under the embedding zeta -> exp(2 pi i / N).
  std::complex<double> to_complex() const;
  std::string to_string() const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& b);
  CycNum& operator-=(const CycNum& b);
  CycNum& operator*=(const CycNum& b);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const mpq_class& r);
  friend CycNum operator*(const mpq_class& r, const CycNum& a) { return a * r; }
  friend CycNum operator/(const CycNum& a, const CycNum& b);
  friend bool operator==(const CycNum& a, const CycNum& b);

 private:
  friend class ZetaAccumulator;

  struct Small {
    std::vector<std::int64_t> num;
    std::int64_t den = 1;
  };
  struct Big {
    std::vector<mpz_class> num;
    mpz_class den = 1;
  };

  CycNum(const CycloRing* ring, Small s) : ring_(ring), rep_(std::move(s)) {}
  CycNum(const CycloRing* ring, Big b) : ring_(ring), rep_(std::move(b)) {}

  static CycNum canonical(const CycloRing* ring, Big b);
  static CycNum from_wide(const CycloRing* ring, std::vector<__int128> num, __int128 den);
  Big to_big() const;
  bool is_small() const { return std::holds_alternative<Small>(rep_); }
  void check_ring(const CycNum& b) const;
  bool is_scalar() const;

  const CycloRing* ring_;
  std::variant<Small, Big> rep_;
};

inline std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

CycNum zeta_power(int order, long k);
/// Multiplicative inverse via extended gcd with Phi_N; throws std::domain_error
/// on zero.
CycNum inv(const CycNum& a);
std::optional<mpq_class> as_rational(const CycNum& a);

/// Sums of terms zeta^k * x over a shared group-ring buffer. Adding a term
/// costs O(phi(N)); a single reduction modulo Phi_N happens in value().
class ZetaAccumulator {
 public:
  explicit ZetaAccumulator(const CycloRing* ring);
  explicit ZetaAccumulator(int order) : ZetaAccumulator(CycloRing::get(order)) {}

  /// += mult * zeta^k
  void add_unit(long k, std::int64_t mult = 1);
  /// += zeta^k * x
  void add(const CycNum& x, long k = 0);
  CycNum value() const;

 private:
  void spill();
  void rescale(std::int64_t new_den);

  const CycloRing* ring_;
  std::vector<__int128> buf_;
  std::int64_t den_ = 1;
  bool spilled_ = false;
  CycNum overflow_;
};

}  // namespace ffhyper
