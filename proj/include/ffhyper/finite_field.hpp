#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ffhyper {

/// An element of F_q, identified by the base-p integer of its coefficients
/// (coefficient of x^i is the i-th base-p digit). 0 and 1 are the field's
/// zero and one.
struct FqElem {
  int v = 0;
  friend auto operator<=>(FqElem, FqElem) = default;
};

struct FieldOptions {
  int max_q = 64;
  /// Pick the k-th smallest element of full order as generator (0 = smallest).
  int generator_rank = 0;
};

/// F_{p^r} with explicit tables. Immutable after construction.
class FieldCtx {
 public:
  static std::shared_ptr<const FieldCtx> build(int p, int r, FieldOptions opts = {});

  int p() const { return p_; }
  int r() const { return r_; }
  int q() const { return q_; }
  /// Cyclotomic order p(q-1) of the value field.
  int N() const { return p_ * (q_ - 1); }
  /// Monic modulus, low degree first, length r+1.
  const std::vector<int>& modulus() const { return modulus_; }
  FqElem generator() const { return gen_; }

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  /// Image of an integer in the prime field.
  FqElem from_int(long n) const;
  FqElem from_coeffs(std::span<const int> c) const;
  std::vector<int> coeffs(FqElem a) const;

  FqElem add(FqElem a, FqElem b) const { return {add_[idx(a, b)]}; }
  FqElem mul(FqElem a, FqElem b) const { return {mul_[idx(a, b)]}; }
  FqElem neg(FqElem a) const { return {neg_[static_cast<std::size_t>(a.v)]}; }
  FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
  /// Throws std::domain_error on zero.
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, long e) const;

  /// Exponent k in [0, q-1) with g^k = a; throws std::domain_error on zero.
  int dlog(FqElem a) const;
  /// dlog without the zero check; returns -1 for zero.
  int dlog_or_neg(FqElem a) const { return dlog_[static_cast<std::size_t>(a.v)]; }
  FqElem exp(long k) const;
  /// Absolute trace to F_p, in [0, p).
  int trace(FqElem a) const { return trace_[static_cast<std::size_t>(a.v)]; }

  std::string to_string(FqElem a) const;

 private:
  FieldCtx() = default;
  std::size_t idx(FqElem a, FqElem b) const {
    return static_cast<std::size_t>(a.v) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(b.v);
  }

  int p_ = 0, r_ = 0, q_ = 0;
  std::vector<int> modulus_;
  FqElem gen_;
  std::vector<int> add_, mul_, neg_, inv_, dlog_, exp_, trace_;
};

using FieldPtr = std::shared_ptr<const FieldCtx>;

bool is_prime(long n);
/// (p, r) with p^r == q, or throws std::invalid_argument.
std::pair<int, int> prime_power(long q);

FieldPtr build_field(int p, int r, FieldOptions opts = {});
inline FqElem fq_add(const FieldCtx& k, FqElem a, FqElem b) { return k.add(a, b); }
inline FqElem fq_mul(const FieldCtx& k, FqElem a, FqElem b) { return k.mul(a, b); }
inline FqElem fq_neg(const FieldCtx& k, FqElem a) { return k.neg(a); }
inline FqElem fq_inv(const FieldCtx& k, FqElem a) { return k.inv(a); }
inline int trace(const FieldCtx& k, FqElem a) { return k.trace(a); }
inline int dlog(const FieldCtx& k, FqElem a) { return k.dlog(a); }

/// Element bound to its field, for writing point formulas.
class Fq {
 public:
  Fq(const FieldCtx& k, FqElem e) : k_(&k), e_(e) {}
  Fq(const FieldCtx& k, long n) : k_(&k), e_(k.from_int(n)) {}

  FqElem elem() const { return e_; }
  const FieldCtx& field() const { return *k_; }
  bool is_zero() const { return e_.v == 0; }

  friend Fq operator+(Fq a, Fq b) { return {*a.k_, a.k_->add(a.e_, b.e_)}; }
  friend Fq operator-(Fq a, Fq b) { return {*a.k_, a.k_->sub(a.e_, b.e_)}; }
  friend Fq operator*(Fq a, Fq b) { return {*a.k_, a.k_->mul(a.e_, b.e_)}; }
  friend Fq operator/(Fq a, Fq b) { return {*a.k_, a.k_->div(a.e_, b.e_)}; }
  friend Fq operator+(Fq a, long n) { return a + Fq(*a.k_, n); }
  friend Fq operator-(Fq a, long n) { return a - Fq(*a.k_, n); }
  friend Fq operator*(long n, Fq a) { return Fq(*a.k_, n) * a; }
  friend Fq operator+(long n, Fq a) { return Fq(*a.k_, n) + a; }
  friend Fq operator-(long n, Fq a) { return Fq(*a.k_, n) - a; }
  friend Fq operator/(long n, Fq a) { return Fq(*a.k_, n) / a; }
  Fq operator-() const { return {*k_, k_->neg(e_)}; }
  friend bool operator==(Fq a, Fq b) { return a.e_ == b.e_; }
  friend bool operator==(Fq a, long n) { return a.e_ == a.k_->from_int(n); }

 private:
  const FieldCtx* k_;
  FqElem e_;
};

}  // namespace ffhyper
