#include "ffhyper/characters.hpp"

#include <stdexcept>

namespace ffhyper {

namespace {

int mod(long a, long m) {
  long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

bool has_quadratic(const FieldCtx& k) { return k.p() != 2; }

MulChar quadratic(const FieldCtx& k) {
  if (!has_quadratic(k)) throw std::invalid_argument("no quadratic character in characteristic 2");
  return {(k.q() - 1) / 2};
}

MulChar char_mul(const FieldCtx& k, MulChar a, MulChar b) { return {mod(a.j + b.j, k.q() - 1)}; }
MulChar char_conj(const FieldCtx& k, MulChar a) { return {mod(-a.j, k.q() - 1)}; }
MulChar char_pow(const FieldCtx& k, MulChar a, long e) { return {mod(static_cast<long>(a.j) * e, k.q() - 1)}; }

std::vector<MulChar> char_group(const FieldCtx& k) {
  std::vector<MulChar> out;
  for (int j = 0; j < k.q() - 1; ++j) out.push_back({j});
  return out;
}

CharValue mul_char_value(const FieldCtx& k, MulChar chi, FqElem x) {
  const int d = k.dlog_or_neg(x);
  if (d < 0) return {true, 0};
  return {false, static_cast<long>(k.p()) * mod(static_cast<long>(chi.j) * d, k.q() - 1)};
}

CharValue add_char_value(const FieldCtx& k, AddChar psi, FqElem x) {
  return {false, static_cast<long>(k.q() - 1) * k.trace(k.mul(psi.a, x))};
}

CycNum to_cyc(const FieldCtx& k, CharValue v) {
  return v.zero ? CycNum::zero(k.N()) : zeta_power(k.N(), v.k);
}

CycNum mul_char_eval(const FieldCtx& k, MulChar chi, FqElem x) { return to_cyc(k, mul_char_value(k, chi, x)); }
CycNum add_char_eval(const FieldCtx& k, AddChar psi, FqElem x) { return to_cyc(k, add_char_value(k, psi, x)); }

}  // namespace ffhyper

namespace ffhyper {

bool in_multiplicative_subfield(const FieldCtx& k, const CycNum& x) {
  const long p = k.p(), m = k.q() - 1, N = k.N();
  // a = 1 mod (q-1), a = r mod p with r a primitive root mod p.
  for (long r = 1; r < p; ++r) {
    long ord = 1, y = r;
    while (y != 1) {
      y = y * r % p;
      ++ord;
    }
    if (ord != p - 1) continue;
    for (long a = 1; a < N; a += m) {
      if (a % p == r) return x.galois(a) == x;
    }
  }
  return true;
}

}  // namespace ffhyper
