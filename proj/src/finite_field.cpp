#include "ffhyper/finite_field.hpp"

#include <sstream>
#include <stdexcept>

namespace ffhyper {

namespace {

using Poly = std::vector<int>;  // over F_p, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly digits(long v, int p, int len) {
  Poly c(static_cast<std::size_t>(len));
  for (auto& d : c) {
    d = static_cast<int>(v % p);
    v /= p;
  }
  return c;
}

int modinv(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p) {
    if (e & 1) r = r * b % p;
  }
  return r;
}

// Remainder of a modulo b over F_p.
Poly polymod(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  const int lead_inv = modinv(b.back(), p);
  while (a.size() >= b.size()) {
    const int c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[shift + j] = ((a[shift + j] - c * b[j]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

bool irreducible(const Poly& f, int p) {
  const int r = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= r; ++d) {
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long v = 0; v < count; ++v) {
      Poly g = digits(v, p, d);
      g.push_back(1);
      if (polymod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::pair<int, int> prime_power(long q) {
  if (q < 2) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  long p = 2;
  while (q % p != 0) ++p;
  int r = 0;
  long m = q;
  while (m % p == 0) {
    m /= p;
    ++r;
  }
  if (m != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  return {static_cast<int>(p), r};
}

FieldPtr FieldCtx::build(int p, int r, FieldOptions opts) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (r < 1) throw std::invalid_argument("extension degree must be positive");
  long q = 1;
  for (int i = 0; i < r; ++i) {
    q *= p;
    if (q > opts.max_q) {
      throw std::invalid_argument("field size exceeds bound " + std::to_string(opts.max_q));
    }
  }

  std::shared_ptr<FieldCtx> k(new FieldCtx());
  k->p_ = p;
  k->r_ = r;
  k->q_ = static_cast<int>(q);

  for (long v = 0; v < q; ++v) {
    Poly f = digits(v, p, r);
    f.push_back(1);
    if (irreducible(f, p)) {
      k->modulus_ = f;
      break;
    }
  }

  const auto Q = static_cast<std::size_t>(q);
  k->add_.resize(Q * Q);
  k->mul_.resize(Q * Q);
  k->neg_.resize(Q);
  auto encode = [&](const Poly& c) {
    int v = 0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * p + c[static_cast<std::size_t>(i)];
    return v;
  };
  for (int a = 0; a < q; ++a) {
    Poly ca = digits(a, p, r);
    Poly na(ca.size());
    for (std::size_t i = 0; i < ca.size(); ++i) na[i] = (p - ca[i]) % p;
    k->neg_[static_cast<std::size_t>(a)] = encode(na);
    for (int b = 0; b < q; ++b) {
      Poly cb = digits(b, p, r);
      Poly s(ca.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = (ca[i] + cb[i]) % p;
      Poly prod(2 * static_cast<std::size_t>(r), 0);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) prod[static_cast<std::size_t>(i + j)] += ca[static_cast<std::size_t>(i)] * cb[static_cast<std::size_t>(j)];
      for (auto& c : prod) c %= p;
      Poly m = polymod(prod, k->modulus_, p);
      m.resize(static_cast<std::size_t>(r), 0);
      k->add_[k->idx({a}, {b})] = encode(s);
      k->mul_[k->idx({a}, {b})] = encode(m);
    }
  }

  // Full-order elements in enumeration order.
  std::vector<int> prime_factors;
  for (long m = q - 1, d = 2; m > 1; ++d) {
    if (m % d == 0) {
      prime_factors.push_back(static_cast<int>(d));
      while (m % d == 0) m /= d;
    }
  }
  int rank = 0;
  bool found = false;
  for (int a = 1; a < q && !found; ++a) {
    bool full = true;
    for (int l : prime_factors) {
      if (k->pow({a}, (q - 1) / l) == k->one()) full = false;
    }
    if (full && rank++ == opts.generator_rank) {
      k->gen_ = {a};
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("generator rank out of range");

  k->dlog_.assign(Q, -1);
  k->exp_.resize(Q - 1);
  FqElem x = k->one();
  for (int e = 0; e < q - 1; ++e) {
    k->exp_[static_cast<std::size_t>(e)] = x.v;
    k->dlog_[static_cast<std::size_t>(x.v)] = e;
    x = k->mul(x, k->gen_);
  }
  k->inv_.assign(Q, 0);
  for (int a = 1; a < q; ++a) {
    const int e = k->dlog_[static_cast<std::size_t>(a)];
    k->inv_[static_cast<std::size_t>(a)] = k->exp_[static_cast<std::size_t>((q - 1 - e) % (q - 1))];
  }
  k->trace_.resize(Q);
  for (int a = 0; a < q; ++a) {
    FqElem t = k->zero(), y{a};
    for (int i = 0; i < r; ++i) {
      t = k->add(t, y);
      y = k->pow(y, p);
    }
    if (t.v >= p) throw std::logic_error("trace left the prime field");
    k->trace_[static_cast<std::size_t>(a)] = t.v;
  }
  return k;
}

FieldPtr build_field(int p, int r, FieldOptions opts) { return FieldCtx::build(p, r, opts); }

FqElem FieldCtx::from_int(long n) const {
  long m = n % p_;
  if (m < 0) m += p_;
  return {static_cast<int>(m)};
}

FqElem FieldCtx::from_coeffs(std::span<const int> c) const {
  if (static_cast<int>(c.size()) > r_) throw std::invalid_argument("too many coefficients");
  int v = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    int d = c[static_cast<std::size_t>(i)] % p_;
    if (d < 0) d += p_;
    v = v * p_ + d;
  }
  return {v};
}

std::vector<int> FieldCtx::coeffs(FqElem a) const { return digits(a.v, p_, r_); }

FqElem FieldCtx::inv(FqElem a) const {
  if (a.v == 0) throw std::domain_error("inverse of zero in F_q");
  return {inv_[static_cast<std::size_t>(a.v)]};
}

FqElem FieldCtx::pow(FqElem a, long e) const {
  if (e < 0) return pow(inv(a), -e);
  FqElem r = one();
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int FieldCtx::dlog(FqElem a) const {
  if (a.v == 0) throw std::domain_error("discrete log of zero");
  return dlog_[static_cast<std::size_t>(a.v)];
}

FqElem FieldCtx::exp(long k) const {
  long m = k % (q_ - 1);
  if (m < 0) m += q_ - 1;
  return {exp_[static_cast<std::size_t>(m)]};
}

std::string FieldCtx::to_string(FqElem a) const {
  std::ostringstream os;
  os << "[";
  auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

}  // namespace ffhyper
