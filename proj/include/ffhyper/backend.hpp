#pragma once

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "ffhyper/hyperfun.hpp"

namespace ffhyper {

/// Floating-point mirror of SumTables. Gauss sums are summed directly in
/// double precision, so this is an independent evaluation path.
class FloatTables {
 public:
  using Value = std::complex<double>;

  class Accum {
   public:
    explicit Accum(const FloatTables* t) : t_(t) {}
    void add(const Value& x, long k) { s_ += x * t_->unit(k); }
    void add_unit(long k, std::int64_t mult = 1) { s_ += static_cast<double>(mult) * t_->unit(k); }
    Value value() const { return s_; }

   private:
    const FloatTables* t_;
    Value s_ = 0;
  };

  static std::shared_ptr<const FloatTables> build(FieldPtr field, AddChar psi = {});

  const FieldCtx& field() const { return *field_; }
  AddChar psi() const { return psi_; }
  int N() const { return field_->N(); }
  int m() const { return m_; }
  int p() const { return field_->p(); }

  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value unit(long k) const;
  Accum accum() const { return Accum(this); }
  Value rot(const Value& x, long k) const { return x * unit(k); }
  Value scale(const Value& x, const mpq_class& r) const {
    mpq_class c(r);
    c.canonicalize();  // get_d assumes a positive denominator
    return x * c.get_d();
  }

  const Value& gauss(MulChar e) const { return g_[i1(e)]; }
  const Value& gauss_circ(MulChar e) const { return gc_[i1(e)]; }
  const Value& gauss_inv(MulChar e) const { return ginv_[i1(e)]; }
  const Value& gauss_circ_inv(MulChar e) const { return gcinv_[i1(e)]; }
  Value poch(MulChar a, MulChar n) const { return g_[i1(mul(a, n))] * ginv_[i1(a)]; }
  Value poch_circ(MulChar a, MulChar n) const { return gc_[i1(mul(a, n))] * gcinv_[i1(a)]; }
  Value poch_inv(MulChar a, MulChar n) const { return g_[i1(a)] * ginv_[i1(mul(a, n))]; }
  Value poch_circ_inv(MulChar a, MulChar n) const { return gc_[i1(a)] * gcinv_[i1(mul(a, n))]; }
  Value jacobi(std::span<const MulChar> chars) const;

 private:
  FloatTables() = default;
  std::size_t i1(MulChar e) const { return static_cast<std::size_t>(e.j); }
  MulChar mul(MulChar a, MulChar b) const { return {(a.j + b.j) % m_}; }

  FieldPtr field_;
  AddChar psi_;
  int m_ = 0;
  std::vector<Value> roots_;
  std::vector<Value> g_, gc_, ginv_, gcinv_;
};

/// Character index bound to its group order, for writing parameter formulas.
struct Ch {
  int j = 0;
  int m = 1;
  Ch operator*(Ch o) const { return {(j + o.j) % m, m}; }
  Ch bar() const { return {(m - j) % m, m}; }
  Ch pow(long e) const {
    long r = (static_cast<long>(j) * e) % m;
    return {static_cast<int>(r < 0 ? r + m : r), m};
  }
  Ch sq() const { return pow(2); }
  bool triv() const { return j == 0; }
  MulChar mc() const { return {j}; }
  friend bool operator==(Ch a, Ch b) { return a.j == b.j; }
};

/// Uniform evaluation interface over exact (SumTables) or floating-point
/// (FloatTables) arithmetic. Hypergeometric coefficient data is cached per
/// parameter tuple.
template <class Tab>
class Backend {
 public:
  using Value = typename Tab::Value;
  using Accum = typename Tab::Accum;

  Backend(FieldPtr field, AddChar psi = {}) : field_(field), tab_(Tab::build(field, psi)) {}

  const FieldCtx& k() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  const Tab& tables() const { return *tab_; }
  int q() const { return field_->q(); }
  int m() const { return field_->q() - 1; }
  bool odd() const { return field_->p() != 2; }

  Ch ch(int j) const { return {j, m()}; }
  Ch ch(MulChar c) const { return {c.j, m()}; }
  Ch eps() const { return {0, m()}; }
  Ch phi() const { return {quadratic(*field_).j, m()}; }
  Fq el(FqElem x) const { return {*field_, x}; }
  Fq el(long n) const { return {*field_, n}; }

  Value zero() const { return tab_->zero(); }
  Value one() const { return tab_->one(); }
  Value num(long n) const { return tab_->scale(tab_->one(), n); }
  Value rat(const mpq_class& r) const { return tab_->scale(tab_->one(), r); }
  Accum accum() const { return tab_->accum(); }

  CharValue chiv(Ch c, Fq x) const { return mul_char_value(*field_, c.mc(), x.elem()); }
  CharValue psiv(Fq x) const { return add_char_value(*field_, tab_->psi(), x.elem()); }
  Value chi(Ch c, Fq x) const { return val(chiv(c, x)); }
  Value psi(Fq x) const { return val(psiv(x)); }
  Value val(CharValue v) const { return v.zero ? zero() : tab_->unit(v.k); }

  Value g(Ch c) const { return tab_->gauss(c.mc()); }
  Value gc(Ch c) const { return tab_->gauss_circ(c.mc()); }
  Value ginv(Ch c) const { return tab_->gauss_inv(c.mc()); }
  Value gcinv(Ch c) const { return tab_->gauss_circ_inv(c.mc()); }
  Value poch(Ch a, Ch n) const { return tab_->poch(a.mc(), n.mc()); }
  Value pochc(Ch a, Ch n) const { return tab_->poch_circ(a.mc(), n.mc()); }
  Value pochinv(Ch a, Ch n) const { return tab_->poch_inv(a.mc(), n.mc()); }
  Value pochcinv(Ch a, Ch n) const { return tab_->poch_circ_inv(a.mc(), n.mc()); }

  Value jacobi(const std::vector<Ch>& cs) const {
    std::vector<MulChar> v;
    for (auto c : cs) v.push_back(c.mc());
    return tab_->jacobi(v);
  }

  /// Jacobi sum by direct summation over x_1 + ... + x_n = 1.
  Value jacobi_direct(const std::vector<Ch>& cs) const {
    const std::size_t n = cs.size();
    auto acc = accum();
    std::vector<int> x(n - 1, 1);
    const int q = field_->q();
    for (;;) {
      FqElem rest = field_->one();
      long e = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        rest = field_->sub(rest, {x[i]});
        e += mul_char_value(*field_, cs[i].mc(), {x[i]}).k;
      }
      if (rest.v != 0) acc.add_unit(e + mul_char_value(*field_, cs[n - 1].mc(), rest).k, 1);
      std::size_t i = 0;
      while (i < n - 1 && ++x[i] == q) x[i++] = 1;
      if (i == n - 1) break;
    }
    Value v = acc.value();
    return (n % 2 == 0) ? zero() - v : v;
  }

  Value F(const std::vector<Ch>& up, const std::vector<Ch>& low, Fq x) {
    std::vector<int> key{static_cast<int>(up.size())};
    for (auto c : up) key.push_back(c.j);
    for (auto c : low) key.push_back(c.j);
    auto it = series_.find(key);
    if (it == series_.end()) {
      if (series_.size() > kCacheLimit) series_.clear();
      HyperParams hp;
      for (auto c : up) hp.upper.push_back(c.mc());
      for (auto c : low) hp.lower.push_back(c.mc());
      it = series_.emplace(key, hyper_series(*tab_, hp)).first;
    }
    return hyper_eval(*tab_, it->second, x.elem());
  }

  Value lauricella(const LauricellaParams& lp, const std::vector<Fq>& x) {
    const int n = lp.arity();
    EvalPoint pt;
    for (auto v : x) pt.push_back(v.elem());
    std::vector<int> key{static_cast<int>(lp.family), static_cast<int>(lp.alpha.size()),
                         static_cast<int>(lp.beta.size())};
    for (auto c : lp.alpha) key.push_back(c.j);
    for (auto c : lp.beta) key.push_back(c.j);
    for (auto c : lp.gamma) key.push_back(c.j);
    auto it = kernels_.find(key);
    if (it == kernels_.end()) {
      if (kernels_.size() > kCacheLimit) kernels_.clear();
      it = kernels_.emplace(key, Kernel{lauricella_factors(*tab_, lp), {}, 0}).first;
    }
    Kernel& kern = it->second;
    ++kern.uses;
    // Building the full tensor pays off after a couple of evaluations at
    // arity 3; at arity <= 2 it is no more expensive than one convolution.
    if (kern.tensor.empty() && (n <= 2 || kern.uses >= 2)) kern.tensor = lauricella_tensor(*tab_, kern.factors);
    if (kern.tensor.empty()) return lauricella_eval_conv(*tab_, kern.factors, pt);
    return lauricella_eval_tensor(*tab_, n, kern.tensor, pt);
  }

  Value FA(Ch a, const std::vector<Ch>& b, const std::vector<Ch>& c, const std::vector<Fq>& x) {
    return lauricella({Family::A, mcs({a}), mcs(b), mcs(c)}, x);
  }
  Value FB(const std::vector<Ch>& a, const std::vector<Ch>& b, Ch c, const std::vector<Fq>& x) {
    return lauricella({Family::B, mcs(a), mcs(b), mcs({c})}, x);
  }
  Value FC(Ch a, Ch b, const std::vector<Ch>& c, const std::vector<Fq>& x) {
    return lauricella({Family::C, mcs({a}), mcs({b}), mcs(c)}, x);
  }
  Value FD(Ch a, const std::vector<Ch>& b, Ch c, const std::vector<Fq>& x) {
    if (b.empty()) return one();
    return lauricella({Family::D, mcs({a}), mcs(b), mcs({c})}, x);
  }

  /// The same backend over the additive character psi_a.
  Backend& twisted(FqElem a) {
    if (a == tab_->psi().a) return *this;
    auto& slot = twists_[a.v];
    if (!slot) slot = std::make_unique<Backend>(field_, AddChar{a});
    return *slot;
  }

 private:
  static constexpr std::size_t kCacheLimit = 50000;

  static std::vector<MulChar> mcs(const std::vector<Ch>& v) {
    std::vector<MulChar> out;
    for (auto c : v) out.push_back(c.mc());
    return out;
  }

  struct Kernel {
    LauricellaFactors<Tab> factors;
    std::vector<Value> tensor;
    int uses = 0;
  };

  FieldPtr field_;
  std::shared_ptr<const Tab> tab_;
  std::map<std::vector<int>, std::vector<Value>> series_;
  std::map<std::vector<int>, Kernel> kernels_;
  std::map<int, std::unique_ptr<Backend>> twists_;
};

using ExactBackend = Backend<SumTables>;
using FloatBackend = Backend<FloatTables>;

/// |a - b| <= tol * max(1, |a|, |b|)
bool approx_equal(const std::complex<double>& a, const std::complex<double>& b, double tol = 1e-9);

}  // namespace ffhyper
