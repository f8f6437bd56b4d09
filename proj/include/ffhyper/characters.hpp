#pragma once

#include <vector>

#include "ffhyper/cyclotomic.hpp"
#include "ffhyper/finite_field.hpp"

namespace ffhyper {

/// Multiplicative character chi_j, chi_j(g^k) = zeta_{q-1}^{jk}; index in [0, q-1).
struct MulChar {
  int j = 0;
  friend auto operator<=>(MulChar, MulChar) = default;
};

/// Additive character psi_a(x) = zeta_p^{Tr(a x)}, a != 0.
struct AddChar {
  FqElem a{1};
};

/// A character value: either 0 or zeta_N^k.
struct CharValue {
  bool zero = false;
  long k = 0;
};

inline MulChar eps() { return {0}; }
/// Quadratic character; throws for p = 2.
MulChar quadratic(const FieldCtx& k);
bool has_quadratic(const FieldCtx& k);

MulChar char_mul(const FieldCtx& k, MulChar a, MulChar b);
MulChar char_conj(const FieldCtx& k, MulChar a);
MulChar char_pow(const FieldCtx& k, MulChar a, long e);
inline int delta(MulChar a) { return a.j == 0 ? 1 : 0; }
std::vector<MulChar> char_group(const FieldCtx& k);

CharValue mul_char_value(const FieldCtx& k, MulChar chi, FqElem x);
CharValue add_char_value(const FieldCtx& k, AddChar psi, FqElem x);
CycNum to_cyc(const FieldCtx& k, CharValue v);

CycNum mul_char_eval(const FieldCtx& k, MulChar chi, FqElem x);
CycNum add_char_eval(const FieldCtx& k, AddChar psi, FqElem x);

}  // namespace ffhyper

namespace ffhyper {

/// True iff x lies in Q(zeta_{q-1}) inside Q(zeta_N), tested as invariance
/// under the automorphisms fixing zeta_{q-1}.
bool in_multiplicative_subfield(const FieldCtx& k, const CycNum& x);

}  // namespace ffhyper
