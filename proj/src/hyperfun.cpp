#include "ffhyper/hyperfun.hpp"

#include <stdexcept>

namespace ffhyper {

char family_name(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

int LauricellaParams::arity() const {
  auto bad = [this]() {
    return std::invalid_argument(std::string("malformed F_") + family_name(family) + " parameters");
  };
  std::size_t n = 0;
  switch (family) {
    case Family::A:
      n = beta.size();
      if (alpha.size() != 1 || gamma.size() != n) throw bad();
      break;
    case Family::B:
      n = alpha.size();
      if (beta.size() != n || gamma.size() != 1) throw bad();
      break;
    case Family::C:
      n = gamma.size();
      if (alpha.size() != 1 || beta.size() != 1) throw bad();
      break;
    case Family::D:
      n = beta.size();
      if (alpha.size() != 1 || gamma.size() != 1) throw bad();
      break;
  }
  if (n < 1) throw bad();
  return static_cast<int>(n);
}

CycNum hyper(const SumTables& t, const HyperParams& hp, FqElem lambda) {
  return hyper_eval(t, hyper_series(t, hp), lambda);
}

CycNum lauricella(const SumTables& t, const LauricellaParams& lp, const EvalPoint& pt) {
  return lauricella_eval_conv(t, lauricella_factors(t, lp), pt);
}

CycNum lauricella_direct(const SumTables& t, const LauricellaParams& lp, const EvalPoint& pt) {
  const FieldCtx& k = t.field();
  const int n = lp.arity();
  if (static_cast<int>(pt.size()) != n) throw std::invalid_argument("point arity mismatch");
  const int m = t.m();
  CycNum total = t.zero();
  std::vector<int> nu(static_cast<std::size_t>(n), 0);
  for (;;) {
    MulChar S = eps();
    for (int v : nu) S = char_mul(k, S, {v});
    CycNum term = t.one();
    switch (lp.family) {
      case Family::A: term = t.poch(lp.alpha[0], S); break;
      case Family::B: term = inv(t.poch_circ(lp.gamma[0], S)); break;
      case Family::C: term = t.poch(lp.alpha[0], S) * t.poch(lp.beta[0], S); break;
      case Family::D: term = t.poch(lp.alpha[0], S) / t.poch_circ(lp.gamma[0], S); break;
    }
    for (int i = 0; i < n; ++i) {
      const auto I = static_cast<std::size_t>(i);
      const MulChar V{nu[I]};
      CycNum num = t.one();
      CycNum den = t.poch_circ(eps(), V);
      switch (lp.family) {
        case Family::A: num = t.poch(lp.beta[I], V); den *= t.poch_circ(lp.gamma[I], V); break;
        case Family::B: num = t.poch(lp.alpha[I], V) * t.poch(lp.beta[I], V); break;
        case Family::C: den *= t.poch_circ(lp.gamma[I], V); break;
        case Family::D: num = t.poch(lp.beta[I], V); break;
      }
      term = term * num / den * mul_char_eval(k, V, pt[I]);
    }
    total += term;
    int i = 0;
    while (i < n && ++nu[static_cast<std::size_t>(i)] == m) nu[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return total * lauricella_norm(t, n);
}

namespace {

// Iterate over (k^x)^n, first coordinate fastest.
template <class F>
void for_each_torus_point(const FieldCtx& k, int n, F&& f) {
  std::vector<FqElem> x(static_cast<std::size_t>(n), k.one());
  std::vector<int> e(static_cast<std::size_t>(n), 0);
  for (;;) {
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = k.exp(e[static_cast<std::size_t>(i)]);
    f(x, e);
    int i = 0;
    while (i < n && ++e[static_cast<std::size_t>(i)] == k.q() - 1) e[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
}

}  // namespace

std::vector<CycNum> fourier_transform(const FieldCtx& k, int n, const TorusFunction& f) {
  if (n < 1) throw std::invalid_argument("Fourier transform needs n >= 1");
  std::vector<CycNum> values;
  std::vector<std::vector<int>> logs;
  for_each_torus_point(k, n, [&](const std::vector<FqElem>& x, const std::vector<int>& e) {
    values.push_back(f(x));
    logs.push_back(e);
  });
  std::vector<CycNum> out;
  for_each_torus_point(k, n, [&](const std::vector<FqElem>&, const std::vector<int>& nu) {
    ZetaAccumulator acc(k.N());
    for (std::size_t j = 0; j < values.size(); ++j) {
      long e = 0;
      for (int i = 0; i < n; ++i) e -= static_cast<long>(nu[static_cast<std::size_t>(i)]) * logs[j][static_cast<std::size_t>(i)];
      acc.add(values[j], e * k.p());
    }
    out.push_back(acc.value());
  });
  return out;
}

CycNum fourier_inverse(const FieldCtx& k, int n, const std::vector<CycNum>& fhat, const std::vector<FqElem>& point) {
  if (static_cast<int>(point.size()) != n) throw std::invalid_argument("point arity mismatch");
  std::vector<int> d;
  for (auto x : point) d.push_back(k.dlog(x));
  ZetaAccumulator acc(k.N());
  std::size_t j = 0;
  for_each_torus_point(k, n, [&](const std::vector<FqElem>&, const std::vector<int>& nu) {
    long e = 0;
    for (int i = 0; i < n; ++i) e += static_cast<long>(nu[static_cast<std::size_t>(i)]) * d[static_cast<std::size_t>(i)];
    acc.add(fhat.at(j++), e * k.p());
  });
  mpz_class den = 1;
  for (int i = 0; i < n; ++i) den *= k.q() - 1;
  return acc.value() * mpq_class(mpz_class(1), den);
}

std::optional<CycNum> hyper_3f2_doublesum(const SumTables& t, MulChar a0, MulChar a1, MulChar a2, MulChar b1,
                                          MulChar b2, FqElem lambda) {
  const FieldCtx& k = t.field();
  const MulChar c1 = char_mul(k, char_conj(k, a1), b1);
  const MulChar c2 = char_mul(k, char_conj(k, a2), b2);
  if (a0.j == 0 || c1.j == 0 || c2.j == 0 || lambda.v == 0) return std::nullopt;
  const MulChar a0b = char_conj(k, a0);
  ZetaAccumulator acc(k.N());
  for (int s = 1; s < k.q(); ++s) {
    const CharValue v1 = mul_char_value(k, a1, {s});
    const CharValue v2 = mul_char_value(k, c1, k.sub(k.one(), {s}));
    if (v2.zero) continue;
    for (int u = 1; u < k.q(); ++u) {
      const CharValue w1 = mul_char_value(k, a2, {u});
      const CharValue w2 = mul_char_value(k, c2, k.sub(k.one(), {u}));
      const CharValue w0 = mul_char_value(k, a0b, k.sub(k.one(), k.mul(lambda, k.mul({s}, {u}))));
      if (w2.zero || w0.zero) continue;
      acc.add_unit(v1.k + v2.k + w1.k + w2.k + w0.k, 1);
    }
  }
  return acc.value();
}

}  // namespace ffhyper
