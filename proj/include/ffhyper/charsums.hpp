#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ffhyper/characters.hpp"

namespace ffhyper {

/// Gauss sums of every character for one field and additive character, with
/// the derived Pochhammer tables. Immutable after build.
class SumTables {
 public:
  static std::shared_ptr<const SumTables> build(FieldPtr field, AddChar psi = {});

  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  AddChar psi() const { return psi_; }
  int N() const { return field_->N(); }
  int m() const { return m_; }
  int p() const { return field_->p(); }

  using Value = CycNum;
  using Accum = ZetaAccumulator;
  CycNum zero() const { return CycNum::zero(N()); }
  CycNum one() const { return CycNum::one(N()); }
  CycNum unit(long k) const { return zeta_power(N(), k); }
  ZetaAccumulator accum() const { return ZetaAccumulator(N()); }
  CycNum rot(const CycNum& x, long k) const { return x.mul_zeta(k); }
  CycNum scale(const CycNum& x, const mpq_class& r) const { return x * r; }

  const CycNum& gauss(MulChar e) const { return g_[i1(e)]; }
  const CycNum& gauss_circ(MulChar e) const { return gc_[i1(e)]; }
  const CycNum& gauss_inv(MulChar e) const { return ginv_[i1(e)]; }
  const CycNum& gauss_circ_inv(MulChar e) const { return gcinv_[i1(e)]; }

  /// (a)_n = g(a n)/g(a)
  const CycNum& poch(MulChar a, MulChar n) const { return poch_[i2(a, n)]; }
  /// (a)°_n = g°(a n)/g°(a)
  const CycNum& poch_circ(MulChar a, MulChar n) const { return pochc_[i2(a, n)]; }
  const CycNum& poch_inv(MulChar a, MulChar n) const { return pochinv_[i2(a, n)]; }
  const CycNum& poch_circ_inv(MulChar a, MulChar n) const { return pochcinv_[i2(a, n)]; }

  /// j(e_1, ..., e_n) from Gauss sums; requires n >= 2.
  CycNum jacobi(std::span<const MulChar> chars) const;

 private:
  SumTables() = default;
  std::size_t i1(MulChar e) const { return static_cast<std::size_t>(e.j); }
  std::size_t i2(MulChar a, MulChar n) const {
    return static_cast<std::size_t>(a.j) * static_cast<std::size_t>(m_) + static_cast<std::size_t>(n.j);
  }

  FieldPtr field_;
  AddChar psi_;
  int m_ = 0;
  std::vector<CycNum> g_, gc_, ginv_, gcinv_;
  std::vector<CycNum> poch_, pochc_, pochinv_, pochcinv_;
};

using TablesPtr = std::shared_ptr<const SumTables>;

/// g(e) = -sum_{x != 0} psi(x) e(x), summed directly.
CycNum gauss_sum_direct(const FieldCtx& k, AddChar psi, MulChar e);
/// (-1)^{n-1} sum over x_1 + ... + x_n = 1, x_i != 0, of prod e_i(x_i).
CycNum jacobi_bruteforce(const FieldCtx& k, std::span<const MulChar> chars);

inline const CycNum& gauss(const SumTables& t, MulChar e) { return t.gauss(e); }
inline const CycNum& gauss_circ(const SumTables& t, MulChar e) { return t.gauss_circ(e); }
inline CycNum jacobi(const SumTables& t, std::span<const MulChar> chars) { return t.jacobi(chars); }
inline const CycNum& poch(const SumTables& t, MulChar a, MulChar n) { return t.poch(a, n); }
inline const CycNum& poch_circ(const SumTables& t, MulChar a, MulChar n) { return t.poch_circ(a, n); }

}  // namespace ffhyper
