#include <type_traits>

#include "ffhyper/verifier.hpp"

namespace ffhyper {
namespace {

struct View {
  const FieldCtx& k;
  const Tuple& t;
  int m;
  View(const FieldCtx& k, const Tuple& t) : k(k), t(t), m(k.q() - 1) {}
  Ch c(std::size_t i) const { return {t.chars.at(i), m}; }
  Fq x(std::size_t i) const { return {k, t.points.at(i)}; }
  Fq el(long n) const { return {k, n}; }
  Fq el(FqElem e) const { return {k, e}; }
  Ch eps() const { return {0, m}; }
  Ch phi() const { return {m / 2, m}; }
  std::vector<Ch> cs(std::size_t from, std::size_t count) const {
    std::vector<Ch> v;
    for (std::size_t i = 0; i < count; ++i) v.push_back(c(from + i));
    return v;
  }
  std::vector<Fq> xs(std::size_t from, std::size_t count) const {
    std::vector<Fq> v;
    for (std::size_t i = 0; i < count; ++i) v.push_back(x(from + i));
    return v;
  }
};

bool nontriv(std::initializer_list<Ch> cs) {
  for (auto c : cs)
    if (c.triv()) return false;
  return true;
}

Ch prod(const std::vector<Ch>& v, int m) {
  Ch r{0, m};
  for (auto c : v) r = r * c;
  return r;
}

template <class Acc>
void add_cv(Acc& acc, std::initializer_list<CharValue> vs) {
  long e = 0;
  for (const auto& v : vs) {
    if (v.zero) return;
    e += v.k;
  }
  acc.add_unit(e, 1);
}

template <class E>
using ValueOf = typename std::remove_reference_t<E>::Value;

#define EVAL [](auto& E, const Tuple& t) -> std::vector<Part<ValueOf<decltype(E)>>>
#define HYP [](const FieldCtx& k, const Tuple& t) -> bool

template <class F>
void reg(std::vector<IdentitySpec>& R, std::string id, std::string summary, bool odd,
         std::vector<Variant> variants, std::function<bool(const FieldCtx&, const Tuple&)> hyp, F f) {
  IdentitySpec s;
  s.id = std::move(id);
  s.summary = std::move(summary);
  s.requires_odd_p = odd;
  s.variants = std::move(variants);
  s.hypothesis = hyp ? std::move(hyp) : [](const FieldCtx&, const Tuple&) { return true; };
  s.exact = [f](ExactBackend& E, const Tuple& t) { return f(E, t); };
  s.flt = [f](FloatBackend& E, const Tuple& t) { return f(E, t); };
  R.push_back(std::move(s));
}

Variant var(int chars, std::vector<Dom> pts, int dim = 1, int n = 0, int aux = 0) {
  return {n, aux, chars, std::move(pts), dim};
}

constexpr Dom A = Dom::All;
constexpr Dom NZ = Dom::NonZero;

void foundations(std::vector<IdentitySpec>& R) {
  reg(R, "gauss-inversion", "g(e) g°(conj e) = e(-1) q", false, {var(1, {}, 0)}, nullptr, EVAL {
    View v(E.k(), t);
    const Ch e = v.c(0);
    return {{"", E.g(e) * E.gc(e.bar()), E.chi(e, v.el(-1)) * E.num(E.q())}};
  });

  reg(R, "jacobi-gauss", "j(e_1..e_n) from Gauss sums equals the direct sum", false,
      {var(2, {}, 0, 2), var(3, {}, 0, 3)}, nullptr, EVAL {
        View v(E.k(), t);
        const auto cs = v.cs(0, static_cast<std::size_t>(t.n));
        return {{"", E.jacobi(cs), E.jacobi_direct(cs)}};
      });

  reg(R, "poch-chain", "(a)_{nu mu} = (a)_nu (a nu)_mu, plain and corrected", false, {var(3, {}, 0)}, nullptr,
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), nu = v.c(1), mu = v.c(2);
        return {{"plain", E.poch(a, nu * mu), E.poch(a, nu) * E.poch(a * nu, mu)},
                {"circ", E.pochc(a, nu * mu), E.pochc(a, nu) * E.pochc(a * nu, mu)}};
      });

  reg(R, "poch-invert", "(a)_nu (conj a)°_{conj nu} = nu(-1)", false, {var(2, {}, 0)}, nullptr, EVAL {
    View v(E.k(), t);
    const Ch a = v.c(0), nu = v.c(1);
    return {{"", E.poch(a, nu) * E.pochc(a.bar(), nu.bar()), E.chi(nu, v.el(-1))}};
  });

  reg(R, "dup-gauss", "g(a^2) = a(4) g(a) g(a phi) / g(phi)", true, {var(1, {}, 0)}, nullptr, EVAL {
    View v(E.k(), t);
    const Ch a = v.c(0), phi = v.phi();
    const auto a4 = E.chi(a, v.el(4));
    return {{"plain", E.g(a.sq()), a4 * E.g(a) * E.g(a * phi) * E.ginv(phi)},
            {"circ", E.gc(a.sq()), a4 * E.gc(a) * E.gc(a * phi) * E.ginv(phi)}};
  });

  reg(R, "dup-poch", "(a^2)_{nu^2} = nu(4) (a)_nu (a phi)_nu", true, {var(2, {}, 0)}, nullptr, EVAL {
    View v(E.k(), t);
    const Ch a = v.c(0), nu = v.c(1), phi = v.phi();
    const auto n4 = E.chi(nu, v.el(4));
    return {{"plain", E.poch(a.sq(), nu.sq()), n4 * E.poch(a, nu) * E.poch(a * phi, nu)},
            {"circ", E.pochc(a.sq(), nu.sq()), n4 * E.pochc(a, nu) * E.pochc(a * phi, nu)}};
  });
}

void one_variable(std::vector<IdentitySpec>& R) {
  reg(R, "psi-0F0", "0F0(l) = psi(-l)", false, {var(0, {NZ})}, nullptr, EVAL {
    View v(E.k(), t);
    const Fq l = v.x(0);
    return {{"", E.F({}, {}, l), E.psi(-l)}};
  });

  reg(R, "int-1F0", "1F0(a; l) = conj a(1 - l)", false, {var(1, {NZ})},
      HYP {
        View v(k, t);
        return !v.c(0).triv() || !(v.x(0) == 1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0);
        const Fq l = v.x(0);
        return {{"", E.F({a}, {}, l), E.chi(a.bar(), 1 - l)}};
      });

  reg(R, "int-1F1", "(-1)^n prod j(a_i, conj a_i b_i) nFn = sum psi(-l prod u_i) prod a_i(u_i) conj a_i b_i(1 - u_i)",
      false, {var(2, {NZ}, 1, 1), var(4, {NZ}, 1, 2)},
      HYP {
        View v(k, t);
        for (int i = 0; i < t.n; ++i)
          if (v.c(2 * static_cast<std::size_t>(i)) == v.c(2 * static_cast<std::size_t>(i) + 1)) return false;
        return true;
      },
      EVAL {
        View v(E.k(), t);
        const Fq l = v.x(0);
        const int q = E.q();
        std::vector<Ch> up, low, cb;
        auto lhs = E.one();
        for (std::size_t i = 0; i < static_cast<std::size_t>(t.n); ++i) {
          const Ch a = v.c(2 * i), b = v.c(2 * i + 1);
          up.push_back(a);
          low.push_back(b);
          cb.push_back(a.bar() * b);
          lhs = lhs * E.jacobi({a, a.bar() * b});
        }
        lhs = lhs * E.F(up, low, l);
        if (t.n % 2 == 1) lhs = E.zero() - lhs;
        auto acc = E.accum();
        if (t.n == 1) {
          for (int u = 0; u < q; ++u) {
            const Fq U = v.el(FqElem{u});
            add_cv(acc, {E.psiv(-(l * U)), E.chiv(up[0], U), E.chiv(cb[0], 1 - U)});
          }
        } else {
          for (int u = 0; u < q; ++u)
            for (int w = 0; w < q; ++w) {
              const Fq U = v.el(FqElem{u}), W = v.el(FqElem{w});
              add_cv(acc, {E.psiv(-(l * U * W)), E.chiv(up[0], U), E.chiv(cb[0], 1 - U), E.chiv(up[1], W),
                           E.chiv(cb[1], 1 - W)});
            }
        }
        return {{"", lhs, acc.value()}};
      });

  reg(R, "ana-1F1",
      "1F1(a; eps; l) = -a(-1) sum_{u != 0,1} psi(-l u) a(u/(1-u)) + delta(a)(q-1) psi(-l)", false,
      {var(1, {A})}, HYP { return t.points[0].v != 0; },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0);
        const Fq l = v.x(0);
        auto acc = E.accum();
        for (int u = 0; u < E.q(); ++u) {
          const Fq U = v.el(FqElem{u});
          if (U.is_zero() || U == 1) continue;
          add_cv(acc, {E.psiv(-(l * U)), E.chiv(a, U / (1 - U))});
        }
        auto rhs = E.zero() - E.chi(a, v.el(-1)) * acc.value();
        if (a.triv()) rhs = rhs + E.num(E.q() - 1) * E.psi(-l);
        return {{"", E.F({a}, {v.eps()}, l), rhs}};
      });

  reg(R, "int-3F2", "j(a1, conj a1 b1) j(a2, conj a2 b2) 3F2 = double character sum", false, {var(5, {A})},
      HYP {
        View v(k, t);
        const Ch a0 = v.c(0), a1 = v.c(1), a2 = v.c(2), b1 = v.c(3), b2 = v.c(4);
        return nontriv({a0, a1.bar() * b1, a2.bar() * b2}) && t.points[0].v != 0;
      },
      EVAL {
        View v(E.k(), t);
        const Ch a0 = v.c(0), a1 = v.c(1), a2 = v.c(2), b1 = v.c(3), b2 = v.c(4);
        const Fq l = v.x(0);
        const Ch c1 = a1.bar() * b1, c2 = a2.bar() * b2;
        auto lhs = E.jacobi({a1, c1}) * E.jacobi({a2, c2}) * E.F({a0, a1, a2}, {b1, b2}, l);
        auto acc = E.accum();
        for (int s = 1; s < E.q(); ++s)
          for (int u = 1; u < E.q(); ++u) {
            const Fq S = v.el(FqElem{s}), U = v.el(FqElem{u});
            add_cv(acc, {E.chiv(a0.bar(), 1 - l * S * U), E.chiv(a1, S), E.chiv(c1, 1 - S), E.chiv(a2, U),
                         E.chiv(c2, 1 - U)});
          }
        return {{"", lhs, acc.value()}};
      });

  reg(R, "euler-gauss", "2F1(a, b; c; 1) = g°(c) g(conj(ab) c) / (g°(conj a c) g°(conj b c))", false,
      {var(3, {})},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2);
        return !((a.triv() && b == c) || (a == c && b.triv()));
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2);
        return {{"", E.F({a, b}, {c}, v.el(1)),
                 E.gc(c) * E.g(a.bar() * b.bar() * c) * E.gcinv(a.bar() * c) * E.gcinv(b.bar() * c)}};
      });

  reg(R, "trans-2F1", "2F1 at l against 2F1 at (l-1)/l, l != 0, 1", false, {var(3, {A})},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2);
        // The formula is false at l = 1 (its right side vanishes there), so
        // l = 1 is excluded along with l = 0.
        return nontriv({a, b}) && !(a == c) && !(b == c) && t.points[0].v != 0 && !(v.x(0) == 1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2);
        const Fq l = v.x(0);
        const Ch abc = (a * b).bar() * c;
        auto rhs = E.gc(c) * E.g(a * b * c.bar()) * E.ginv(a) * E.ginv(b) * E.chi(a * c.bar(), l) *
                   E.chi(abc, 1 - l) * E.F({a.bar(), a.bar() * c}, {abc}, (l - 1) / l);
        return {{"", E.F({a, b}, {c}, l), rhs}};
      });
}

void sum_representations(std::vector<IdentitySpec>& R) {
  // [a, b_1..b_n, c_1..c_n]
  reg(R, "sumrep-FA", "-g(a) F_A = sum_t psi(t) a(t) prod 1F1(b_i; c_i; l_i t)", false,
      {var(3, {A}, 1, 1), var(5, {A, A}, 2, 2), var(7, {A, A, A}, 3, 3)}, nullptr, EVAL {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n);
        const Ch a = v.c(0);
        const auto b = v.cs(1, n), c = v.cs(1 + n, n);
        const auto l = v.xs(0, n);
        auto lhs = E.zero() - E.g(a) * E.FA(a, b, c, l);
        auto acc = E.accum();
        for (int s = 1; s < E.q(); ++s) {
          const Fq T = v.el(FqElem{s});
          auto term = E.one();
          for (std::size_t i = 0; i < n; ++i) term = term * E.F({b[i]}, {c[i]}, l[i] * T);
          acc.add(term, E.psiv(T).k + E.chiv(a, T).k);
        }
        return {{"", lhs, acc.value()}};
      });

  // [a_1..a_n, b_1..b_n, c]
  reg(R, "sumrep-FB", "-q/g°(c) F_B = sum_t psi(-t) conj c(t) prod 2F0(a_i, b_i; ; l_i/t)", false,
      {var(3, {A}, 1, 1), var(5, {A, A}, 2, 2)}, nullptr, EVAL {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n);
        const auto a = v.cs(0, n), b = v.cs(n, n);
        const Ch c = v.c(2 * n);
        const auto l = v.xs(0, n);
        auto lhs = E.zero() - E.num(E.q()) * E.gcinv(c) * E.FB(a, b, c, l);
        auto acc = E.accum();
        for (int s = 1; s < E.q(); ++s) {
          const Fq T = v.el(FqElem{s});
          auto term = E.one();
          for (std::size_t i = 0; i < n; ++i) term = term * E.F({a[i], b[i]}, {}, l[i] / T);
          acc.add(term, E.psiv(-T).k + E.chiv(c.bar(), T).k);
        }
        return {{"", lhs, acc.value()}};
      });

  // [a, b_1..b_n]
  reg(R, "sumrep-FC-kummer", "-g(a^2) F_C(a; a phi; b_i; l_i) = sum_t psi(t) a^2(t) prod 0F1(; b_i; l_i t^2/4)", true,
      {var(2, {A}, 1, 1), var(3, {A, A}, 2, 2)}, nullptr, EVAL {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n);
        const Ch a = v.c(0);
        const auto b = v.cs(1, n);
        const auto l = v.xs(0, n);
        auto lhs = E.zero() - E.g(a.sq()) * E.FC(a, a * v.phi(), b, l);
        auto acc = E.accum();
        for (int s = 1; s < E.q(); ++s) {
          const Fq T = v.el(FqElem{s});
          auto term = E.one();
          for (std::size_t i = 0; i < n; ++i) term = term * E.F({}, {b[i]}, l[i] * T * T / v.el(4));
          acc.add(term, E.psiv(T).k + E.chiv(a.sq(), T).k);
        }
        return {{"", lhs, acc.value()}};
      });

  // [a, b, c_1..c_n]
  reg(R, "sumrep-FC-double", "g(a) g(b) F_C = sum_{s,t} psi(s+t) a(s) b(t) prod 0F1(; c_i; l_i s t)", false,
      {var(3, {A}, 1, 1), var(4, {A, A}, 2, 2)}, nullptr, EVAL {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n);
        const Ch a = v.c(0), b = v.c(1);
        const auto c = v.cs(2, n);
        const auto l = v.xs(0, n);
        auto lhs = E.g(a) * E.g(b) * E.FC(a, b, c, l);
        auto acc = E.accum();
        for (int s = 1; s < E.q(); ++s)
          for (int u = 1; u < E.q(); ++u) {
            const Fq S = v.el(FqElem{s}), U = v.el(FqElem{u});
            auto term = E.one();
            for (std::size_t i = 0; i < n; ++i) term = term * E.F({}, {c[i]}, l[i] * S * U);
            acc.add(term, E.psiv(S + U).k + E.chiv(a, S).k + E.chiv(b, U).k);
          }
        return {{"", lhs, acc.value()}};
      });
}

void confluent(std::vector<IdentitySpec>& R) {
  reg(R, "erdelyi-2F2", "sum over nu of products of 1F1 equals psi(l) 2F2", false, {var(4, {A})},
      HYP {
        View v(k, t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3);
        return nontriv({a1, a2}) && !(a1 == b1) && !(a2 == b2);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3);
        const Fq l = v.x(0);
        auto acc = E.accum();
        for (int j = 0; j < E.m(); ++j) {
          const Ch nu = E.ch(j);
          const auto nv = E.chiv(nu, l);
          if (nv.zero) continue;
          auto term = E.poch(a1, nu) * E.poch(a2, nu) * E.pochcinv(v.eps(), nu) * E.pochcinv(b1, nu) *
                      E.pochcinv(b2, nu) * E.F({a1 * nu}, {b1 * nu}, -l) * E.F({a2 * nu}, {b2 * nu}, -l);
          acc.add(term, nv.k);
        }
        auto lhs = acc.value() * E.rat(mpq_class(-1, E.q() - 1));
        return {{"", lhs, E.psi(l) * E.F({a1.bar() * b1, a2.bar() * b2}, {b1, b2}, l)}};
      });

  reg(R, "lem-1F1-sum", "convolution of two 1F1(; eps) over eta", false, {var(1, {A, A})},
      HYP { return t.chars[0] != 0; },
      EVAL {
        View v(E.k(), t);
        const Ch nu = v.c(0), e = v.eps();
        const Fq x = v.x(0), y = v.x(1);
        auto lhs = E.zero();
        for (int j = 0; j < E.m(); ++j) {
          const Ch eta = E.ch(j);
          lhs = lhs + E.F({eta.bar()}, {e}, x) * E.F({nu.bar() * eta}, {e}, y);
        }
        lhs = lhs * E.rat(mpq_class(-1, E.q() - 1));
        auto rhs = E.F({nu.bar()}, {e}, x + y) - E.psi(-y) * E.F({nu.bar()}, {e}, x) -
                   E.psi(-x) * E.F({nu.bar()}, {e}, y);
        // Boundary term missing from the printed statement: at x + y = 0 with
        // x, y != 0 the left side exceeds the printed right side by 1.
        if ((x + y).is_zero() && !x.is_zero()) rhs = rhs + E.one();
        return {{"", lhs, rhs}};
      });

  reg(R, "kummer-product", "psi(l) 1F1(a; a^2; 2l) = 0F1(; a phi; l^2/4)", true, {var(1, {A})},
      HYP { return t.chars[0] != 0; },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0);
        const Fq l = v.x(0);
        return {{"", E.psi(l) * E.F({a}, {a.sq()}, v.el(2) * l), E.F({}, {a * v.phi()}, l * l / v.el(4))}};
      });
}

void fa_fc(std::vector<IdentitySpec>& R) {
  // n = 0: [a, nu], (x, y); n = 1: [a, nu, b, c], (x, y, l)
  reg(R, "redFA-sum", "sum over eta of F_A^(n+2) reduces to three F_A^(n+1)", false,
      {var(2, {A, A}, 2, 0), var(4, {A, A, A}, 3, 1)},
      HYP {
        View v(k, t);
        return t.chars[1] != 0 && !(v.x(0) == 1) && !(v.x(1) == 1);
      },
      EVAL {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n);
        const Ch a = v.c(0), nu = v.c(1), e = v.eps();
        const auto b = v.cs(2, n), c = v.cs(2 + n, n);
        const Fq x = v.x(0), y = v.x(1);
        const auto l = v.xs(2, n);
        auto lhs = E.zero();
        for (int j = 0; j < E.m(); ++j) {
          const Ch eta = E.ch(j);
          std::vector<Ch> bb{eta.bar(), nu.bar() * eta}, cc{e, e};
          std::vector<Fq> pt{x, y};
          for (std::size_t i = 0; i < n; ++i) {
            bb.push_back(b[i]);
            cc.push_back(c[i]);
            pt.push_back(l[i]);
          }
          lhs = lhs + E.FA(a, bb, cc, pt);
        }
        lhs = lhs * E.rat(mpq_class(-1, E.q() - 1));
        std::vector<Ch> bb{nu.bar()}, cc{e};
        for (std::size_t i = 0; i < n; ++i) {
          bb.push_back(b[i]);
          cc.push_back(c[i]);
        }
        auto point = [&](Fq first, Fq scale) {
          std::vector<Fq> pt{first};
          for (std::size_t i = 0; i < n; ++i) pt.push_back(l[i] / scale);
          return pt;
        };
        const Fq one = v.el(1);
        auto rhs = E.FA(a, bb, cc, point(x + y, one)) -
                   E.chi(a.bar(), 1 - x) * E.FA(a, bb, cc, point(y / (1 - x), 1 - x)) -
                   E.chi(a.bar(), 1 - y) * E.FA(a, bb, cc, point(x / (1 - y), 1 - y));
        // Same boundary term as in lem-1F1-sum, carried through the sum
        // representation: F_A^(n)(a; b; c; l), which is 1 for n = 0.
        if ((x + y).is_zero() && !x.is_zero()) rhs = rhs + (n == 0 ? E.one() : E.FA(a, b, c, l));
        return {{"", lhs, rhs}};
      });

  reg(R, "F2-half-half", "1/(1-q) sum_eta F2(eps; conj eta, conj nu eta; eps, eps; 1/2, 1/2) = -1", true,
      {var(1, {}, 2)}, HYP { return t.chars[0] != 0; },
      EVAL {
        View v(E.k(), t);
        const Ch nu = v.c(0), e = v.eps();
        const Fq h = v.el(1) / v.el(2);
        auto lhs = E.zero();
        for (int j = 0; j < E.m(); ++j) {
          const Ch eta = E.ch(j);
          lhs = lhs + E.FA(e, {eta.bar(), nu.bar() * eta}, {e, e}, {h, h});
        }
        lhs = lhs * E.rat(mpq_class(-1, E.q() - 1));
        return {{"", lhs, E.num(-1)}};
      });

  // [a, b_1..b_n], (l_1..l_n)
  reg(R, "bailey-FA-FC", "F_C(a; a phi; b_i phi; l_i^2) = conj a^2(1 + sum l) F_A(a^2; b_i; b_i^2; 2 l_i/(1 + sum l))",
      true, {var(2, {A}, 1, 1), var(3, {A, A}, 2, 2)},
      HYP {
        View v(k, t);
        Fq s = v.el(1);
        for (int i = 0; i < t.n; ++i) {
          if (v.c(1 + static_cast<std::size_t>(i)).triv()) return false;
          s = s + v.x(static_cast<std::size_t>(i));
        }
        return !s.is_zero();
      },
      EVAL {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n);
        const Ch a = v.c(0), phi = v.phi();
        const auto b = v.cs(1, n);
        const auto l = v.xs(0, n);
        Fq s = v.el(1);
        for (auto x : l) s = s + x;
        std::vector<Ch> bphi, b2;
        std::vector<Fq> l2, pt;
        for (std::size_t i = 0; i < n; ++i) {
          bphi.push_back(b[i] * phi);
          b2.push_back(b[i].sq());
          l2.push_back(l[i] * l[i]);
          pt.push_back(v.el(2) * l[i] / s);
        }
        return {{"", E.FC(a, a * phi, bphi, l2), E.chi(a.sq().bar(), s) * E.FA(a.sq(), b, b2, pt)}};
      });
}

void f2(std::vector<IdentitySpec>& R) {
  reg(R, "F2red-i", "2F1(a, a phi; phi; l^2) = conj a^2(1+l) + conj a^2(1-l)", true, {var(1, {A})},
      HYP {
        View v(k, t);
        const Fq l = v.x(0);
        if (l.is_zero()) return false;
        return !v.c(0).sq().triv() || !(l == 1 || l == -1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), phi = v.phi();
        const Fq l = v.x(0);
        const Ch a2b = a.sq().bar();
        // Printed with an extra factor 1/2, which comes from miscounting the
        // squaring map on characters; the sum itself is the value.
        return {{"", E.F({a, a * phi}, {phi}, l * l), E.chi(a2b, 1 + l) + E.chi(a2b, 1 - l)}};
      });

  // [a, chi, eta]
  reg(R, "F2red-ii", "two-term 2F1 sum equals conj a^2(1+l) F2(a^2; ...; 2l/(1+l), 2/(1+l))", true,
      {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        return nontriv({v.c(1), v.c(2)}) && !(v.x(0) == -1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), x = v.c(1), h = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        auto lhs = E.zero();
        for (Ch ap : {a, a * phi})
          lhs = lhs + E.poch(h * phi, ap) * E.pochinv(phi, ap) * E.F({ap, ap * h * phi}, {x.bar() * phi}, l * l);
        auto rhs = E.chi(a.sq().bar(), 1 + l) *
                   E.FA(a.sq(), {x.bar(), h.bar()}, {x.bar().sq(), h.bar().sq()},
                        {v.el(2) * l / (1 + l), v.el(2) / (1 + l)});
        return {{"", lhs, rhs}};
      });

  // [a, b1, b2]
  reg(R, "F2-2F1", "F2(a^2; b1, b2; b1^2, b2^2; 1+l, 1-l) as a two-term 2F1 sum", true, {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        return nontriv({v.c(1), v.c(2)}) && !(v.x(0) == 1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b1 = v.c(1), b2 = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        auto lhs = E.FA(a.sq(), {b1, b2}, {b1.sq(), b2.sq()}, {1 + l, 1 - l});
        const Fq z = (1 + l) / (1 - l);
        auto sum = E.zero();
        for (Ch ap : {a, a * phi})
          sum = sum + E.poch(b2.bar() * phi, ap) * E.pochinv(phi, ap) *
                          E.F({ap, ap * b2.bar() * phi}, {b1 * phi}, z * z);
        return {{"", lhs, E.chi(a.sq().bar(), (1 - l) / v.el(2)) * sum}};
      });

  // [a, b1, b2, c1, c2]
  reg(R, "F2-3F2-at1", "F2(a; b1, b2; c1, c2; l, 1) as a 3F2", false, {var(5, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b1 = v.c(1), b2 = v.c(2), c1 = v.c(3), c2 = v.c(4);
        return nontriv({a, b2, b1 * c1.bar(), b2 * c2.bar()});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b1 = v.c(1), b2 = v.c(2), c1 = v.c(3), c2 = v.c(4);
        const Fq l = v.x(0);
        auto lhs = E.FA(a, {b1, b2}, {c1, c2}, {l, v.el(1)});
        auto rhs = E.poch(b2.bar() * c2, a.bar()) * E.pochcinv(c2, a.bar()) *
                   E.F({a, b1, a * c2.bar()}, {c1, a * b2 * c2.bar()}, l);
        return {{"", lhs, rhs}};
      });

  reg(R, "F2-3F2-split", "F2(a; b1, b2; c1, c2; l, 1-l) as a 3F2 at l/(l-1)", false, {var(5, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b1 = v.c(1), b2 = v.c(2), c1 = v.c(3), c2 = v.c(4);
        return nontriv({a, b1, b2, b1 * c1.bar(), b2 * c2.bar()}) && !(v.x(0) == 1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b1 = v.c(1), b2 = v.c(2), c1 = v.c(3), c2 = v.c(4);
        const Fq l = v.x(0);
        auto lhs = E.FA(a, {b1, b2}, {c1, c2}, {l, 1 - l});
        auto rhs = E.poch(b2.bar() * c2, a.bar()) * E.pochcinv(c2, a.bar()) * E.chi(a.bar(), 1 - l) *
                   E.F({a, b1.bar() * c1, a * c2.bar()}, {c1, a * b2 * c2.bar()}, l / (l - 1));
        return {{"", lhs, rhs}};
      });

  // [a, b1, b2, c1, c2], (x, y)
  reg(R, "int-FA", "j(b1, conj b1 c1) j(b2, conj b2 c2) F2 = double character sum", false, {var(5, {NZ, NZ}, 2)},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b1 = v.c(1), b2 = v.c(2), c1 = v.c(3), c2 = v.c(4);
        return nontriv({a, b1.bar() * c1, b2.bar() * c2});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b1 = v.c(1), b2 = v.c(2), c1 = v.c(3), c2 = v.c(4);
        const Fq x = v.x(0), y = v.x(1);
        auto lhs = E.jacobi({b1, b1.bar() * c1}) * E.jacobi({b2, b2.bar() * c2}) * E.FA(a, {b1, b2}, {c1, c2}, {x, y});
        auto acc = E.accum();
        for (int s = 1; s < E.q(); ++s)
          for (int u = 1; u < E.q(); ++u) {
            const Fq U = v.el(FqElem{s}), W = v.el(FqElem{u});
            add_cv(acc, {E.chiv(a.bar(), 1 - x * U - y * W), E.chiv(b1, U), E.chiv(b1.bar() * c1, 1 - U),
                         E.chiv(b2, W), E.chiv(b2.bar() * c2, 1 - W)});
          }
        return {{"", lhs, acc.value()}};
      });
}

void f3(std::vector<IdentitySpec>& R) {
  // [a1, a2, b1, b2, c]
  reg(R, "F3-3F2-at1", "F3(a1, a2; b1, b2; c; l, 1) as a 3F2", false, {var(5, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3), c = v.c(4);
        return nontriv({a1, a2, b2, (b1 * b2).bar() * c});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3), c = v.c(4);
        const Fq l = v.x(0);
        const Ch ab = (a2 * b2).bar() * c;
        auto lhs = E.FB({a1, a2}, {b1, b2}, c, {l, v.el(1)});
        auto rhs = E.gc(c) * E.g(ab) * E.gcinv(a2.bar() * c) * E.gcinv(b2.bar() * c) *
                   E.F({a1, b1, ab}, {a2.bar() * c, b2.bar() * c}, l);
        return {{"", lhs, rhs}};
      });

  reg(R, "F3-3F2-split", "F3(a1, a2; b1, b2; c; l, l/(l-1)) as a 3F2 at 1-l", false, {var(5, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3), c = v.c(4);
        return nontriv({a1, a2, b1, b2, (a1 * a2).bar() * c}) && !(v.x(0) == 1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3), c = v.c(4);
        const Fq l = v.x(0);
        const Ch cb = c.bar();
        auto lhs = E.FB({a1, a2}, {b1, b2}, c, {l, l / (l - 1)});
        auto rhs = E.g(a1 * a2 * cb) * E.g(a2 * b1 * cb) * E.g(b2.bar()) * E.ginv(cb) *
                   E.gcinv(a1 * a2 * b1 * cb) * E.gcinv(a2 * b2.bar()) * E.chi(cb, l) * E.chi(a2, 1 - l) *
                   E.F({a1 * a2 * cb, a2 * b1 * cb, b2.bar()}, {a1 * a2 * b1 * cb, a2 * b2.bar()}, 1 - l);
        return {{"", lhs, rhs}};
      });

  // [b1, b2, c]
  reg(R, "F3-2F1-quad", "F3 with squared parameters as a two-term 2F1 sum at 4l/(l+1)^2", true,
      {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch b1 = v.c(0), b2 = v.c(1), c = v.c(2);
        const Fq l = v.x(0);
        if (!nontriv({b1.sq(), b2.sq()})) return false;
        for (Ch x : {(b1 * b2).sq(), (b1 * b2.bar()).sq()})
          if (x == c.sq() || x == c.sq().bar()) return false;
        return !(l == 1) && !(l == -1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch b1 = v.c(0), b2 = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        auto lhs = E.FB({b1.sq(), b2.sq()}, {b1.sq().bar(), b2.sq().bar()}, c.sq(), {l / (l + 1), l / (l - 1)});
        auto sum = E.zero();
        const Fq z = v.el(4) * l / ((l + 1) * (l + 1));
        for (Ch cp : {c, c * phi}) sum = sum + E.F({b1.bar() * b2 * cp, b1 * b2 * cp * phi}, {c.sq()}, z);
        auto rhs = E.chi((b2 * c).sq().bar(), 1 + l) * E.chi(b2.sq(), 1 - l) * sum;
        return {{"", lhs, rhs}};
      });

  reg(R, "karlsson", "F3 transformation on the line (l, l/(l-1))", false, {var(5, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3), c = v.c(4);
        for (Ch x : {a1 * a2, b1 * b2, a1 * b2, a2 * b1, a1 * a2 * b1 * b2})
          if (c == x) return false;
        return nontriv({a1, a2, b1, b2}) && !(v.x(0) == 1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3), c = v.c(4);
        const Fq l = v.x(0);
        const std::vector<Fq> pt{l, l / (l - 1)};
        auto lhs = E.chi(a1 * a2 * b1 * c.bar(), 1 - l) * E.FB({a1, a2}, {b1, b2}, c, pt);
        auto rhs = E.FB({(a2 * b1).bar() * c, a1 * a2 * b1 * b2 * c.bar()}, {(a1 * a2).bar() * c, a2}, c, pt);
        return {{"", lhs, rhs}};
      });

  reg(R, "int-FB", "g(b1) g(b2) g(conj(b1 b2) c)/g°(c) F3 = double character sum", false,
      {var(5, {NZ, NZ}, 2)},
      HYP {
        View v(k, t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3), c = v.c(4);
        return nontriv({a1, a2, (b1 * b2).bar() * c});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a1 = v.c(0), a2 = v.c(1), b1 = v.c(2), b2 = v.c(3), c = v.c(4);
        const Fq x = v.x(0), y = v.x(1);
        const Ch bc = (b1 * b2).bar() * c;
        auto lhs = E.g(b1) * E.g(b2) * E.g(bc) * E.gcinv(c) * E.FB({a1, a2}, {b1, b2}, c, {x, y});
        auto acc = E.accum();
        for (int s = 1; s < E.q(); ++s)
          for (int u = 1; u < E.q(); ++u) {
            const Fq U = v.el(FqElem{s}), W = v.el(FqElem{u});
            add_cv(acc, {E.chiv(a1.bar(), 1 - x * U), E.chiv(a2.bar(), 1 - y * W), E.chiv(b1, U), E.chiv(b2, W),
                         E.chiv(bc, 1 - U - W)});
          }
        return {{"", lhs, acc.value()}};
      });
}

void f4(std::vector<IdentitySpec>& R) {
  // [a, b, c], point (l^2, (1-l)^2)
  reg(R, "F4red-parity", "F4(a; b; c phi, phi; l^2, (1-l)^2) = (a)_phi (b)_phi F4(a phi; b phi; ...)", true,
      {var(3, {A}, 2)}, nullptr, EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        const std::vector<Fq> pt{l * l, (1 - l) * (1 - l)};
        return {{"", E.FC(a, b, {c * phi, phi}, pt),
                 E.poch(a, phi) * E.poch(b, phi) * E.FC(a * phi, b * phi, {c * phi, phi}, pt)}};
      });

  reg(R, "F4red-trans", "F4(a; b; c phi, phi; l^2, (1-l)^2) transformed to (l^2/(1-l)^2, 1/(1-l)^2)", true,
      {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2);
        return nontriv({a, b.bar() * c}) && !(v.x(0) == 1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0), u = (1 - l) * (1 - l);
        auto lhs = E.FC(a, b, {c * phi, phi}, {l * l, u});
        auto rhs = E.g(a.bar() * b) * E.g(a * phi) * E.ginv(b) * E.ginv(phi) * E.chi(a.sq().bar(), 1 - l) *
                   E.FC(a, a * phi, {c * phi, a * b.bar()}, {l * l / u, v.el(1) / u});
        return {{"", lhs, rhs}};
      });

  reg(R, "F4red-3F2", "conj a^2(1-l) F4(a; a phi; c phi, a conj b; ...) as a 3F2", true, {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2);
        return nontriv({a * b.bar() * v.phi(), c}) && !(v.x(0) == 1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0), u = (1 - l) * (1 - l);
        auto lhs = E.chi(a.sq().bar(), 1 - l) * E.FC(a, a * phi, {c * phi, a * b.bar()}, {l * l / u, v.el(1) / u});
        auto rhs = E.g(b) * E.g(b * phi) * E.ginv(a.bar() * b) * E.gcinv(a * b * phi) *
                   E.F({a.sq(), b.sq(), c}, {a * b * phi, c.sq()}, l);
        return {{"", lhs, rhs}};
      });

  // [a, b, c1, c2], (x, y)
  reg(R, "F4-lintrans", "F4(a; b; c1, c2; x, y) in terms of F4 at (x/y, 1/y)", false, {var(4, {A, NZ}, 2)},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b = v.c(1), c1 = v.c(2), c2 = v.c(3);
        return nontriv({a, b.bar() * c1 * c2});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c1 = v.c(2), c2 = v.c(3);
        const Fq x = v.x(0), y = v.x(1);
        auto lhs = E.FC(a, b, {c1, c2}, {x, y});
        auto rhs = E.g(a.bar() * b) * E.g(a * c2.bar()) * E.ginv(b) * E.ginv(c2.bar()) * E.chi(a.bar(), y) *
                   E.FC(a, a * c2.bar(), {c1, a * b.bar()}, {x / y, v.el(1) / y});
        return {{"", lhs, rhs}};
      });

  reg(R, "int-F4", "g(conj c1) g(conj c2) g(conj b c1 c2)/g°(conj b) F4 = double character sum", false,
      {var(4, {NZ, NZ}, 2)},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b = v.c(1), c1 = v.c(2), c2 = v.c(3);
        return nontriv({a, b.bar() * c1 * c2});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c1 = v.c(2), c2 = v.c(3);
        const Fq x = v.x(0), y = v.x(1);
        const Ch bc = b.bar() * c1 * c2;
        auto lhs = E.g(c1.bar()) * E.g(c2.bar()) * E.g(bc) * E.gcinv(b.bar()) * E.FC(a, b, {c1, c2}, {x, y});
        auto acc = E.accum();
        for (int s = 1; s < E.q(); ++s)
          for (int u = 1; u < E.q(); ++u) {
            const Fq U = v.el(FqElem{s}), W = v.el(FqElem{u});
            add_cv(acc, {E.chiv(a.bar(), 1 - x / U - y / W), E.chiv(c1.bar(), U), E.chiv(c2.bar(), W),
                         E.chiv(bc, 1 - U - W)});
          }
        return {{"", lhs, acc.value()}};
      });

  // [a, b, c], (x, y)
  reg(R, "appell-kampe", "F4(a; a conj b phi; c, b phi; x, y^2) = conj a^2(1+y) F2(...)", true,
      {var(3, {A, A}, 2)},
      HYP {
        View v(k, t);
        const Fq y = v.x(1);
        return !v.c(1).sq().triv() && !(y == 1) && !(y == -1);
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq x = v.x(0), y = v.x(1), s = (1 + y) * (1 + y);
        auto lhs = E.FC(a, a * b.bar() * phi, {c, b * phi}, {x, y * y});
        auto rhs = E.chi(a.sq().bar(), 1 + y) * E.FA(a, {a * b.bar() * phi, b}, {c, b.sq()}, {x / s, v.el(4) * y / s});
        return {{"", lhs, rhs}};
      });

  auto quad_hyp = HYP {
    View v(k, t);
    const Fq l = v.x(0);
    return !(l == 1) && !(l == -1) && !v.c(t.chars.size() - 1).sq().triv();
  };
  // aux selects alpha: 0 free, 1 eps, 2 b phi, 3 b^2; the last slot is b.
  auto quad = EVAL {
    View v(E.k(), t);
    const Ch b = v.c(t.chars.size() - 1), phi = v.phi();
    Ch a = v.eps();
    switch (t.aux) {
      case 0: a = v.c(0); break;
      case 1: a = v.eps(); break;
      case 2: a = b * phi; break;
      default: a = b.sq(); break;
    }
    const Fq l = v.x(0);
    return {{"", E.F({a, a * b.bar() * phi}, {b * phi}, l * l),
             E.chi(a.sq().bar(), 1 + l) * E.F({a, b}, {b.sq()}, v.el(4) * l / ((1 + l) * (1 + l)))}};
  };
  reg(R, "gauss-quad-lemma", "2F1(a, a conj b phi; b phi; l^2) = conj a^2(1+l) 2F1(a, b; b^2; 4l/(1+l)^2)", true,
      {var(2, {A}, 1, 0, 0)}, quad_hyp, quad);
  reg(R, "gauss-quad-eps", "quadratic 2F1 transformation, branch a = eps", true, {var(1, {A}, 1, 0, 1)}, quad_hyp,
      quad);
  reg(R, "gauss-quad-bphi", "quadratic 2F1 transformation, branch a = b phi", true, {var(1, {A}, 1, 0, 2)},
      quad_hyp, quad);
  reg(R, "gauss-quad-b2", "quadratic 2F1 transformation, branch a = b^2", true, {var(1, {A}, 1, 0, 3)}, quad_hyp,
      quad);
}

void four_f_three(std::vector<IdentitySpec>& R) {
  // [a, b, c]
  reg(R, "tb-i", "F2(a^2; b^2, c^2; b^4, c^4; l, -l) = 4F3(...; l^2)", true, {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch b = v.c(1), c = v.c(2);
        return nontriv({b.sq(), c.sq(), (b * c).sq(), (b * c.bar()).sq()});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        return {{"", E.FA(a.sq(), {b.sq(), c.sq()}, {b.pow(4), c.pow(4)}, {l, -l}),
                 E.F({a, a * phi, b * c, b * c * phi}, {b.sq() * phi, c.sq() * phi, (b * c).sq()}, l * l)}};
      });

  reg(R, "tb-ii", "F2(a^2; b, b; c^2, c^2; l, -l) = 4F3(...; l^2)", true, {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch b = v.c(1), c = v.c(2);
        return !b.triv() && !(b == c) && !(b == c * v.phi()) && !(b == c.sq());
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        return {{"", E.FA(a.sq(), {b, b}, {c.sq(), c.sq()}, {l, -l}),
                 E.F({a, a * phi, b, b.bar() * c.sq()}, {c.sq(), c, c * phi}, l * l)}};
      });

  reg(R, "tb-iii", "F3(a^2, a^2; b^2, b^2; c^2; l, -l) = 4F3(...; l^2)", true, {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b = v.c(1);
        return nontriv({a.sq(), b.sq(), (a * b).sq()});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        return {{"", E.FB({a.sq(), a.sq()}, {b.sq(), b.sq()}, c.sq(), {l, -l}),
                 E.F({a * b, a * b * phi, a.sq(), b.sq()}, {(a * b).sq(), c, c * phi}, l * l)}};
      });

  // [a, b, c1, c2]
  reg(R, "tb-iv", "F4(a; b; c1^2, c2^2; l, l) = 4F3(...; 4l)", true, {var(4, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch c1 = v.c(2), c2 = v.c(3);
        return nontriv({(c1 * c2).sq(), (c1 * c2.bar()).sq()});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c1 = v.c(2), c2 = v.c(3), phi = v.phi();
        const Fq l = v.x(0);
        return {{"", E.FC(a, b, {c1.sq(), c2.sq()}, {l, l}),
                 E.F({a, b, c1 * c2, c1 * c2 * phi}, {c1.sq(), c2.sq(), (c1 * c2).sq()}, v.el(4) * l)}};
      });

  reg(R, "tb-v", "F4(a^2; b^2; c^2, c^2; l, -l) = 4F3(...; -4l^2)", true, {var(3, {A}, 2)}, nullptr, EVAL {
    View v(E.k(), t);
    const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
    const Fq l = v.x(0);
    return {{"", E.FC(a.sq(), b.sq(), {c.sq(), c.sq()}, {l, -l}),
             E.F({a, a * phi, b, b * phi}, {c.sq(), c, c * phi}, -(v.el(4) * l * l))}};
  });

  reg(R, "extra-i", "F2(a^2; b, b conj c^2; c^2, conj c^2; l, -l) = q^delta(c) 4F3(...; l^2)", true, {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch b = v.c(1), c = v.c(2);
        return nontriv({b, b * c.sq().bar(), (b * c.bar()).sq()});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        auto rhs = E.F({a, a * phi, b * c.bar() * phi, b.bar() * c * phi}, {phi, c * phi, c.bar() * phi}, l * l);
        // The printed statement lacks the factor q^delta(c); it is needed at c = eps.
        if (c.triv()) rhs = E.num(E.q()) * rhs;
        return {{"", E.FA(a.sq(), {b, b * c.sq().bar()}, {c.sq(), c.sq().bar()}, {l, -l}), rhs}};
      });

  reg(R, "extra-ii", "F3(a^2, b^2; conj a^2, conj b^2; c^2; l, -l) = 4F3(...; l^2)", true, {var(3, {A}, 2)},
      HYP {
        View v(k, t);
        const Ch a = v.c(0), b = v.c(1);
        return nontriv({a.sq(), b.sq(), (a * b).sq(), (a * b.bar()).sq()});
      },
      EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        return {{"", E.FB({a.sq(), b.sq()}, {a.sq().bar(), b.sq().bar()}, c.sq(), {l, -l}),
                 E.F({a * b, (a * b).bar(), a * b.bar() * phi, a.bar() * b * phi}, {phi, c, c * phi}, l * l)}};
      });

  reg(R, "extra-iii", "F4(a^2; b^2; c^2, conj c^2; l, -l) = q^delta(c) 4F3(...; -4l^2)", true, {var(3, {A}, 2)},
      nullptr, EVAL {
        View v(E.k(), t);
        const Ch a = v.c(0), b = v.c(1), c = v.c(2), phi = v.phi();
        const Fq l = v.x(0);
        auto rhs = E.F({a, a * phi, b, b * phi}, {phi, c * phi, c.bar() * phi}, -(v.el(4) * l * l));
        if (c.triv()) rhs = E.num(E.q()) * rhs;
        return {{"", E.FC(a.sq(), b.sq(), {c.sq(), c.sq().bar()}, {l, -l}), rhs}};
      });
}

void fd(std::vector<IdentitySpec>& R) {
  // [b_1..b_n, nu]
  reg(R, "fd-multinomial", "(prod b)_nu/(eps)°_nu as a convolution of (b_i)_{nu_i}/(eps)°_{nu_i}", false,
      {var(3, {}, 2, 2), var(4, {}, 3, 3)},
      HYP {
        View v(k, t);
        return !prod(v.cs(0, static_cast<std::size_t>(t.n)), v.m).triv();
      },
      EVAL {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n);
        const auto b = v.cs(0, n);
        const Ch nu = v.c(n), e = v.eps();
        const int m = E.m();
        auto lhs = E.poch(prod(b, m), nu) * E.pochcinv(e, nu);
        auto term = [&](Ch bi, Ch ni) { return E.poch(bi, ni) * E.pochcinv(e, ni); };
        auto sum = E.zero();
        if (n == 2) {
          for (int j = 0; j < m; ++j) sum = sum + term(b[0], E.ch(j)) * term(b[1], nu * E.ch(j).bar());
        } else {
          for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i)
              sum = sum + term(b[0], E.ch(j)) * term(b[1], E.ch(i)) * term(b[2], nu * (E.ch(j) * E.ch(i)).bar());
        }
        mpz_class d = 1;
        for (std::size_t i = 1; i < n; ++i) d *= 1 - E.q();
        return {{"", lhs, E.rat(mpq_class(mpz_class(1), d)) * sum}};
      });

  auto fd_variants = [](bool collapse) {
    std::vector<Variant> vs;
    for (int n = 2; n <= 3; ++n)
      for (int i = 0; i < n; ++i)
        vs.push_back(var(n + 2, std::vector<Dom>(static_cast<std::size_t>(i + (collapse ? 1 : 0)), A), n, n, i));
    return vs;
  };
  // [a, b_1..b_n, c]; aux = i
  auto tailprod = [](const View& v, const Tuple& t) {
    Ch B{0, v.m};
    for (int j = t.aux; j < t.n; ++j) B = B * v.c(1 + static_cast<std::size_t>(j));
    return B;
  };
  reg(R, "fd-collapse", "F_D with the last n-i variables equal collapses to F_D^(i+1)", false, fd_variants(true),
      [tailprod](const FieldCtx& k, const Tuple& t) {
        View v(k, t);
        return !tailprod(v, t).triv();
      },
      [tailprod](auto& E, const Tuple& t) -> std::vector<Part<ValueOf<decltype(E)>>> {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n), i = static_cast<std::size_t>(t.aux);
        const Ch a = v.c(0), c = v.c(1 + n);
        const auto b = v.cs(1, n);
        const Fq x = v.x(i);
        auto l = v.xs(0, i);
        std::vector<Fq> full = l;
        for (std::size_t j = i; j < n; ++j) full.push_back(x);
        std::vector<Ch> bb(b.begin(), b.begin() + static_cast<long>(i));
        bb.push_back(tailprod(v, t));
        l.push_back(x);
        return {{"", E.FD(a, b, c, full), E.FD(a, bb, c, l)}};
      });

  reg(R, "fd-at-one", "F_D with the last n-i variables at 1 reduces to F_D^(i)", false, fd_variants(false),
      [tailprod](const FieldCtx& k, const Tuple& t) {
        View v(k, t);
        const Ch B = tailprod(v, t);
        return !B.triv() && !(B == v.c(0).bar() * v.c(1 + static_cast<std::size_t>(t.n)));
      },
      [tailprod](auto& E, const Tuple& t) -> std::vector<Part<ValueOf<decltype(E)>>> {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n), i = static_cast<std::size_t>(t.aux);
        const Ch a = v.c(0), c = v.c(1 + n);
        const auto b = v.cs(1, n);
        const auto l = v.xs(0, i);
        const Ch B = tailprod(v, t);
        std::vector<Fq> full = l;
        for (std::size_t j = i; j < n; ++j) full.push_back(v.el(1));
        std::vector<Ch> bb(b.begin(), b.begin() + static_cast<long>(i));
        auto rhs = E.gc(c) * E.g((a * B).bar() * c) * E.gcinv(a.bar() * c) * E.gcinv(B.bar() * c) *
                   E.FD(a, bb, B.bar() * c, l);
        return {{"", E.FD(a, b, c, full), rhs}};
      });
}

void family_relations(std::vector<IdentitySpec>& R) {
  // [a_1..a_n, b_1..b_n, c]
  reg(R, "fa-fb-remark", "F_B at l_i as F_A at 1/l_i", false, {var(3, {NZ}, 1, 1), var(5, {NZ, NZ}, 2, 2)}, nullptr,
      EVAL {
        View v(E.k(), t);
        const auto n = static_cast<std::size_t>(t.n);
        const auto a = v.cs(0, n), b = v.cs(n, n);
        const Ch c = v.c(2 * n);
        const auto l = v.xs(0, n);
        const Ch B = prod(b, E.m());
        auto pre = E.poch(c.bar(), B);
        std::vector<Ch> cc;
        std::vector<Fq> inv;
        for (std::size_t i = 0; i < n; ++i) {
          pre = pre * E.poch(a[i], b[i].bar()) * E.chi(b[i].bar(), l[i]);
          cc.push_back(a[i].bar() * b[i]);
          inv.push_back(v.el(1) / l[i]);
        }
        return {{"", E.FB(a, b, c, l), pre * E.FA(B * c.bar(), b, cc, inv)}};
      });

  // aux: 0 F_A, 1 F_B, 2 F_C, 3 F_D (n = 2), 4 2F1, 5 3F2; last point is the twist a.
  reg(R, "psi-choice", "values do not depend on the additive character", false,
      {var(5, {A, A, NZ}, 2, 2, 0), var(5, {A, A, NZ}, 2, 2, 1), var(4, {A, A, NZ}, 2, 2, 2),
       var(4, {A, A, NZ}, 2, 2, 3), var(3, {A, NZ}, 1, 1, 4), var(5, {A, NZ}, 1, 1, 5)},
      HYP { return !(Fq(k, t.points.back()) == 1); },
      EVAL {
        View v(E.k(), t);
        auto value = [&](auto& B) {
          const Ch c0 = v.c(0), c1 = v.c(1), c2 = v.c(2);
          switch (t.aux) {
            case 0: return B.FA(c0, {c1, c2}, {v.c(3), v.c(4)}, {v.x(0), v.x(1)});
            case 1: return B.FB({c0, c1}, {c2, v.c(3)}, v.c(4), {v.x(0), v.x(1)});
            case 2: return B.FC(c0, c1, {c2, v.c(3)}, {v.x(0), v.x(1)});
            case 3: return B.FD(c0, {c1, c2}, v.c(3), {v.x(0), v.x(1)});
            case 4: return B.F({c0, c1}, {c2}, v.x(0));
            default: return B.F({c0, c1, c2}, {v.c(3), v.c(4)}, v.x(0));
          }
        };
        auto lhs = value(E);
        auto rhs = value(E.twisted(t.points.back()));
        return {{"", lhs, rhs}};
      });
}

std::vector<IdentitySpec> build_registry() {
  std::vector<IdentitySpec> R;
  foundations(R);
  one_variable(R);
  sum_representations(R);
  confluent(R);
  fa_fc(R);
  f2(R);
  f3(R);
  f4(R);
  four_f_three(R);
  fd(R);
  family_relations(R);
  return R;
}

}  // namespace

const std::vector<IdentitySpec>& registry() {
  static const std::vector<IdentitySpec> r = build_registry();
  return r;
}

const IdentitySpec* find_identity(std::string_view id) {
  for (const auto& s : registry())
    if (s.id == id) return &s;
  return nullptr;
}

}  // namespace ffhyper
