#include "ffhyper/charsums.hpp"

#include <stdexcept>

namespace ffhyper {

CycNum gauss_sum_direct(const FieldCtx& k, AddChar psi, MulChar e) {
  ZetaAccumulator acc(k.N());
  for (int x = 1; x < k.q(); ++x) {
    const CharValue a = add_char_value(k, psi, {x});
    const CharValue m = mul_char_value(k, e, {x});
    acc.add_unit(a.k + m.k, -1);
  }
  return acc.value();
}

CycNum jacobi_bruteforce(const FieldCtx& k, std::span<const MulChar> chars) {
  const std::size_t n = chars.size();
  if (n < 2) throw std::invalid_argument("Jacobi sum needs at least two characters");
  ZetaAccumulator acc(k.N());
  std::vector<int> x(n - 1, 1);
  const int q = k.q();
  for (;;) {
    FqElem rest = k.one();
    long e = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      rest = k.sub(rest, {x[i]});
      e += mul_char_value(k, chars[i], {x[i]}).k;
    }
    if (rest.v != 0) acc.add_unit(e + mul_char_value(k, chars[n - 1], rest).k, 1);
    std::size_t i = 0;
    while (i < n - 1 && ++x[i] == q) x[i++] = 1;
    if (i == n - 1) break;
  }
  CycNum v = acc.value();
  return (n % 2 == 0) ? -v : v;
}

std::shared_ptr<const SumTables> SumTables::build(FieldPtr field, AddChar psi) {
  if (psi.a.v == 0) throw std::invalid_argument("additive character twist must be nonzero");
  std::shared_ptr<SumTables> t(new SumTables());
  const FieldCtx& k = *field;
  t->field_ = std::move(field);
  t->psi_ = psi;
  const int m = k.q() - 1;
  const int N = k.N();
  t->m_ = m;
  const CycNum q = CycNum::from_int(N, k.q());
  const CycNum qinv = CycNum::rational(N, mpq_class(1, k.q()));
  const FqElem minus_one = k.neg(k.one());
  for (int j = 0; j < m; ++j) {
    CycNum g = gauss_sum_direct(k, psi, {j});
    if (g.is_zero()) throw std::logic_error("vanishing Gauss sum");
    t->g_.push_back(g);
    t->gc_.push_back(j == 0 ? g * q : g);
  }
  if (!t->g_[0].is_one()) throw std::logic_error("g(eps) != 1");
  for (int j = 0; j < m; ++j) {
    if (j == 0) {
      t->ginv_.push_back(CycNum::one(N));
      t->gcinv_.push_back(qinv);
      continue;
    }
    // g(e) g(conj e) = e(-1) q for e != eps.
    const CharValue s = mul_char_value(k, {j}, minus_one);
    CycNum gi = t->g_[static_cast<std::size_t>((m - j) % m)].mul_zeta(s.k) * qinv;
    if (!(gi * t->g_[static_cast<std::size_t>(j)]).is_one()) throw std::logic_error("Gauss sum inversion failed");
    t->ginv_.push_back(gi);
    t->gcinv_.push_back(gi);
  }
  const auto M = static_cast<std::size_t>(m);
  t->poch_.reserve(M * M);
  for (int a = 0; a < m; ++a) {
    for (int n = 0; n < m; ++n) {
      const auto an = static_cast<std::size_t>((a + n) % m);
      const auto ai = static_cast<std::size_t>(a);
      t->poch_.push_back(t->g_[an] * t->ginv_[ai]);
      t->pochc_.push_back(t->gc_[an] * t->gcinv_[ai]);
      t->pochinv_.push_back(t->g_[ai] * t->ginv_[an]);
      t->pochcinv_.push_back(t->gc_[ai] * t->gcinv_[an]);
    }
  }
  return t;
}

CycNum SumTables::jacobi(std::span<const MulChar> chars) const {
  const std::size_t n = chars.size();
  if (n < 2) throw std::invalid_argument("Jacobi sum needs at least two characters");
  MulChar prod = eps();
  bool all_trivial = true;
  for (auto c : chars) {
    prod = char_mul(*field_, prod, c);
    all_trivial = all_trivial && c.j == 0;
  }
  if (all_trivial) {
    mpz_class pw = 1;
    for (std::size_t i = 0; i < n; ++i) pw *= 1 - field_->q();
    return CycNum::rational(N(), mpq_class(mpz_class(1 - pw), mpz_class(field_->q())));
  }
  CycNum v = gauss_circ_inv(prod);
  for (auto c : chars) v *= gauss(c);
  return v;
}

}  // namespace ffhyper
