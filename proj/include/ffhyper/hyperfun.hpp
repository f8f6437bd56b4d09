#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ffhyper/charsums.hpp"

namespace ffhyper {

struct HyperParams {
  std::vector<MulChar> upper;
  std::vector<MulChar> lower;
  friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

enum class Family { A, B, C, D };

/// Shapes: A (alpha; beta_i; c_i), B (alpha_i; beta_i; c), C (alpha; beta; c_i),
/// D (alpha; beta_i; c). Single parameters are length-1 vectors.
struct LauricellaParams {
  Family family = Family::A;
  std::vector<MulChar> alpha;
  std::vector<MulChar> beta;
  std::vector<MulChar> gamma;

  /// Number of variables; throws std::invalid_argument on a malformed shape.
  int arity() const;
  friend bool operator==(const LauricellaParams&, const LauricellaParams&) = default;
};

using EvalPoint = std::vector<FqElem>;

char family_name(Family f);

// ---------------------------------------------------------------------------
// Generic evaluation over a table type `Tab` (SumTables or a floating-point
// mirror). Tab provides Value, accum(), rot(), scale(), one(), poch(),
// poch_circ_inv(), field(), m(), p().

/// C(nu) = prod (a_i)_nu / ((eps)°_nu prod (b_j)°_nu), indexed by nu.
template <class Tab>
std::vector<typename Tab::Value> hyper_series(const Tab& t, const HyperParams& hp) {
  std::vector<typename Tab::Value> c;
  c.reserve(static_cast<std::size_t>(t.m()));
  for (int nu = 0; nu < t.m(); ++nu) {
    typename Tab::Value v = t.poch_circ_inv(eps(), {nu});
    for (auto a : hp.upper) v = v * t.poch(a, {nu});
    for (auto b : hp.lower) v = v * t.poch_circ_inv(b, {nu});
    c.push_back(std::move(v));
  }
  return c;
}

/// 1/(1-q) sum_nu C(nu) nu(lambda).
template <class Tab>
typename Tab::Value hyper_eval(const Tab& t, const std::vector<typename Tab::Value>& series, FqElem lambda) {
  const FieldCtx& k = t.field();
  const int d = k.dlog_or_neg(lambda);
  if (d < 0) return t.scale(t.one(), 0);
  auto acc = t.accum();
  const long step = static_cast<long>(t.p()) * d;
  for (int nu = 0; nu < t.m(); ++nu) acc.add(series[static_cast<std::size_t>(nu)], step * nu);
  return t.scale(acc.value(), mpq_class(-1, k.q() - 1));
}

/// Head factor H(nu_1 ... nu_n) and per-variable factors P_i(nu_i) of a
/// Lauricella sum, so that the summand is H(prod nu) prod P_i(nu_i) nu_i(l_i).
template <class Tab>
struct LauricellaFactors {
  int n = 0;
  std::vector<typename Tab::Value> head;
  std::vector<std::vector<typename Tab::Value>> per;
};

template <class Tab>
LauricellaFactors<Tab> lauricella_factors(const Tab& t, const LauricellaParams& lp) {
  const int n = lp.arity();
  const int m = t.m();
  LauricellaFactors<Tab> f;
  f.n = n;
  for (int s = 0; s < m; ++s) {
    const MulChar S{s};
    switch (lp.family) {
      case Family::A: f.head.push_back(t.poch(lp.alpha[0], S)); break;
      case Family::B: f.head.push_back(t.poch_circ_inv(lp.gamma[0], S)); break;
      case Family::C: f.head.push_back(t.poch(lp.alpha[0], S) * t.poch(lp.beta[0], S)); break;
      case Family::D: f.head.push_back(t.poch(lp.alpha[0], S) * t.poch_circ_inv(lp.gamma[0], S)); break;
    }
  }
  for (int i = 0; i < n; ++i) {
    const auto I = static_cast<std::size_t>(i);
    std::vector<typename Tab::Value> col;
    for (int v = 0; v < m; ++v) {
      const MulChar V{v};
      typename Tab::Value x = t.poch_circ_inv(eps(), V);
      switch (lp.family) {
        case Family::A: x = x * t.poch(lp.beta[I], V) * t.poch_circ_inv(lp.gamma[I], V); break;
        case Family::B: x = x * t.poch(lp.alpha[I], V) * t.poch(lp.beta[I], V); break;
        case Family::C: x = x * t.poch_circ_inv(lp.gamma[I], V); break;
        case Family::D: x = x * t.poch(lp.beta[I], V); break;
      }
      col.push_back(std::move(x));
    }
    f.per.push_back(std::move(col));
  }
  return f;
}

template <class Tab>
mpq_class lauricella_norm(const Tab& t, int n) {
  mpz_class d = 1;
  for (int i = 0; i < n; ++i) d *= 1 - t.field().q();
  return mpq_class(mpz_class(1), d);
}

/// Point evaluation by cyclic convolution of the per-variable factors.
template <class Tab>
typename Tab::Value lauricella_eval_conv(const Tab& t, const LauricellaFactors<Tab>& f, const EvalPoint& pt) {
  using V = typename Tab::Value;
  const FieldCtx& k = t.field();
  const int m = t.m();
  if (static_cast<int>(pt.size()) != f.n) throw std::invalid_argument("point arity mismatch");
  std::vector<int> d;
  for (auto x : pt) {
    const int e = k.dlog_or_neg(x);
    if (e < 0) return t.scale(t.one(), 0);
    d.push_back(e);
  }
  auto rotated = [&](int i) {
    std::vector<V> w;
    const long step = static_cast<long>(t.p()) * d[static_cast<std::size_t>(i)];
    for (int v = 0; v < m; ++v) w.push_back(t.rot(f.per[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)], step * v));
    return w;
  };
  std::vector<V> conv = rotated(0);
  for (int i = 1; i < f.n; ++i) {
    std::vector<V> w = rotated(i);
    std::vector<V> next;
    for (int s = 0; s < m; ++s) {
      auto acc = t.accum();
      for (int a = 0; a < m; ++a) {
        acc.add(conv[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>((s - a + m) % m)], 0);
      }
      next.push_back(acc.value());
    }
    conv = std::move(next);
  }
  auto acc = t.accum();
  for (int s = 0; s < m; ++s) acc.add(f.head[static_cast<std::size_t>(s)] * conv[static_cast<std::size_t>(s)], 0);
  return t.scale(acc.value(), lauricella_norm(t, f.n));
}

/// Full coefficient tensor T(nu) = H(prod nu) prod P_i(nu_i), nu_1 fastest.
template <class Tab>
std::vector<typename Tab::Value> lauricella_tensor(const Tab& t, const LauricellaFactors<Tab>& f) {
  using V = typename Tab::Value;
  const int m = t.m();
  // Partial products over the last n-1 indices, then the head.
  std::vector<V> tail{t.one()};
  std::vector<int> tail_sum{0};
  for (int i = f.n - 1; i >= 1; --i) {
    std::vector<V> nt;
    std::vector<int> ns;
    for (std::size_t j = 0; j < tail.size(); ++j) {
      for (int v = 0; v < m; ++v) {
        nt.push_back(f.per[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)] * tail[j]);
        ns.push_back((tail_sum[j] + v) % m);
      }
    }
    tail = std::move(nt);
    tail_sum = std::move(ns);
  }
  std::vector<V> out;
  out.reserve(tail.size() * static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < tail.size(); ++j) {
    for (int v = 0; v < m; ++v) {
      const int s = (tail_sum[j] + v) % m;
      out.push_back(f.head[static_cast<std::size_t>(s)] * f.per[0][static_cast<std::size_t>(v)] * tail[j]);
    }
  }
  return out;
}

/// Point evaluation from a prepared tensor.
template <class Tab>
typename Tab::Value lauricella_eval_tensor(const Tab& t, int n, const std::vector<typename Tab::Value>& tensor,
                                           const EvalPoint& pt) {
  const FieldCtx& k = t.field();
  const int m = t.m();
  if (static_cast<int>(pt.size()) != n) throw std::invalid_argument("point arity mismatch");
  std::vector<long> step;
  for (auto x : pt) {
    const int e = k.dlog_or_neg(x);
    if (e < 0) return t.scale(t.one(), 0);
    step.push_back(static_cast<long>(t.p()) * e);
  }
  auto acc = t.accum();
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  const long N = k.N();
  std::size_t pos = 0;
  for (;;) {
    long e = 0;
    for (int i = 1; i < n; ++i) e += step[static_cast<std::size_t>(i)] * idx[static_cast<std::size_t>(i)];
    e %= N;
    for (int v = 0; v < m; ++v, ++pos) acc.add(tensor[pos], e + step[0] * v);
    int i = 1;
    while (i < n && ++idx[static_cast<std::size_t>(i)] == m) idx[static_cast<std::size_t>(i++)] = 0;
    if (i >= n) break;
  }
  return t.scale(acc.value(), lauricella_norm(t, n));
}

// ---------------------------------------------------------------------------
// Exact entry points.

CycNum hyper(const SumTables& t, const HyperParams& hp, FqElem lambda);
CycNum lauricella(const SumTables& t, const LauricellaParams& lp, const EvalPoint& pt);
/// Direct nested sum over all (nu_1..nu_n), used as a test oracle.
CycNum lauricella_direct(const SumTables& t, const LauricellaParams& lp, const EvalPoint& pt);

/// f^(nu) = sum_t f(t) prod conj(nu_i)(t_i); result indexed with nu_1 fastest.
using TorusFunction = std::function<CycNum(const std::vector<FqElem>&)>;
std::vector<CycNum> fourier_transform(const FieldCtx& k, int n, const TorusFunction& f);
/// 1/(q-1)^n sum_nu fhat(nu) prod nu_i(l_i), for l_i != 0.
CycNum fourier_inverse(const FieldCtx& k, int n, const std::vector<CycNum>& fhat, const std::vector<FqElem>& point);

/// sum_{s,t != 0} conj(a0)(1 - l s t) a1(s) conj(a1)b1(1-s) a2(t) conj(a2)b2(1-t);
/// nullopt when eps is in {a0, conj(a1)b1, conj(a2)b2} or l = 0.
std::optional<CycNum> hyper_3f2_doublesum(const SumTables& t, MulChar a0, MulChar a1, MulChar a2, MulChar b1,
                                          MulChar b2, FqElem lambda);

}  // namespace ffhyper
