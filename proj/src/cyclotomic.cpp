#include "ffhyper/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ffhyper {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

// Thrown by the machine-word kernels; callers retry with GMP.
struct Overflow {};

inline i128 add_ck(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline i128 sub_ck(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline i128 mul_ck(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

inline bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

inline u128 uabs(i128 v) { return v < 0 ? -static_cast<u128>(v) : static_cast<u128>(v); }

u128 gcd_u128(u128 a, u128 b) {
  constexpr u128 lim = std::numeric_limits<std::uint64_t>::max();
  while (b != 0) {
    if (a <= lim && b <= lim) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  mpz_class lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

mpz_class to_mpz(std::int64_t v) { return to_mpz(static_cast<i128>(v)); }

bool mpz_fits64(const mpz_class& v) {
  static const mpz_class lo = to_mpz(std::numeric_limits<std::int64_t>::min());
  static const mpz_class hi = to_mpz(std::numeric_limits<std::int64_t>::max());
  return v >= lo && v <= hi;
}

std::int64_t mpz_to64(const mpz_class& v) {
  // mpz_get_si is exact for values in range on LP64 targets.
  return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
}

// In-place reduction of a coefficient vector modulo Phi_N; leaves degree() entries.
void reduce_wide(std::vector<i128>& a, const CycloRing& ring) {
  const int d = ring.degree();
  for (int i = static_cast<int>(a.size()) - 1; i >= d; --i) {
    const i128 c = a[i];
    if (c == 0) continue;
    const int base = i - d;
    for (const auto& [j, f] : ring.tail()) {
      i128& t = a[base + j];
      if (f == 1) {
        t = sub_ck(t, c);
      } else if (f == -1) {
        t = add_ck(t, c);
      } else {
        t = sub_ck(t, mul_ck(c, f));
      }
    }
    a[i] = 0;
  }
  a.resize(d);
}

void reduce_big(std::vector<mpz_class>& a, const CycloRing& ring) {
  const int d = ring.degree();
  for (int i = static_cast<int>(a.size()) - 1; i >= d; --i) {
    if (a[i] == 0) continue;
    const mpz_class c = a[i];
    const int base = i - d;
    for (const auto& [j, f] : ring.tail()) {
      a[base + j] -= c * static_cast<long>(f);
    }
    a[i] = 0;
  }
  a.resize(d);
}

}  // namespace

// ---------------------------------------------------------------------------
// CycPoly

CycPoly::CycPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

CycPoly CycPoly::monomial(int degree, const mpq_class& c) {
  std::vector<mpq_class> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return CycPoly(std::move(v));
}

mpq_class CycPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

void CycPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

CycPoly operator+(const CycPoly& a, const CycPoly& b) {
  std::vector<mpq_class> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  }
  return CycPoly(std::move(r));
}

CycPoly operator-(const CycPoly& a, const CycPoly& b) {
  std::vector<mpq_class> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  }
  return CycPoly(std::move(r));
}

CycPoly operator*(const CycPoly& a, const CycPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      r[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return CycPoly(std::move(r));
}

std::pair<CycPoly, CycPoly> CycPoly::divmod(const CycPoly& a, const CycPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpq_class> rem = a.coeffs_;
  const int db = b.degree();
  if (a.degree() < db) return {CycPoly{}, a};
  std::vector<mpq_class> quo(static_cast<std::size_t>(a.degree() - db) + 1);
  const mpq_class& lead = b.coeffs_.back();
  for (int i = a.degree(); i >= db; --i) {
    mpq_class c = rem[static_cast<std::size_t>(i)] / lead;
    if (c == 0) continue;
    quo[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {CycPoly(std::move(quo)), CycPoly(std::move(rem))};
}

std::string CycPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpq_class& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    mpq_class m = abs(c);
    if (m != 1 || i == 0) os << m;
    if (i > 0) os << (m != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  return os.str();
}

CycPoly cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic order must be positive");
  static std::recursive_mutex mu;
  static std::map<int, CycPoly> memo;
  std::lock_guard lock(mu);
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  CycPoly num = CycPoly::monomial(n) - CycPoly::monomial(0);
  CycPoly den = CycPoly::monomial(0);
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) den = den * cyclotomic_polynomial(d);
  }
  auto [quo, rem] = CycPoly::divmod(num, den);
  if (!rem.is_zero()) throw std::logic_error("x^N - 1 not divisible by lower cyclotomic factors");
  memo.emplace(n, quo);
  return quo;
}

// ---------------------------------------------------------------------------
// CycloRing

CycloRing::CycloRing(int order) : order_(order) {
  const CycPoly phi = cyclotomic_polynomial(order);
  degree_ = phi.degree();
  for (const auto& c : phi.coeffs()) {
    if (c.get_den() != 1 || !mpz_fits64(c.get_num())) {
      throw std::logic_error("cyclotomic polynomial coefficient out of range");
    }
    modulus_.push_back(mpz_to64(c.get_num()));
  }
  for (int j = 0; j < degree_; ++j) {
    if (modulus_[static_cast<std::size_t>(j)] != 0) tail_.emplace_back(j, modulus_[static_cast<std::size_t>(j)]);
  }
  roots_.reserve(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) {
    const double t = 2.0 * std::numbers::pi * k / order;
    roots_.emplace_back(std::cos(t), std::sin(t));
  }
}

const CycloRing* CycloRing::get(int order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycloRing>> rings;
  std::lock_guard lock(mu);
  auto& slot = rings[order];
  if (!slot) slot.reset(new CycloRing(order));
  return slot.get();
}

std::complex<double> CycloRing::root(long k) const {
  long r = k % order_;
  if (r < 0) r += order_;
  return roots_[static_cast<std::size_t>(r)];
}

// ---------------------------------------------------------------------------
// CycNum

// Canonical construction from wide numerators over a wide denominator.
CycNum CycNum::from_wide(const CycloRing* ring, std::vector<__int128> num, __int128 den) {
  if (den < 0) {
    den = -den;
    for (auto& v : num) v = -v;
  }
  u128 g = static_cast<u128>(den);
  bool all_zero = true;
  for (const auto& v : num) {
    if (v == 0) continue;
    all_zero = false;
    if (g != 1) g = gcd_u128(g, uabs(v));
  }
  if (all_zero) {
    den = 1;
  } else if (g > 1) {
    const i128 gi = static_cast<i128>(g);
    for (auto& v : num) v /= gi;
    den /= gi;
  }
  bool small = fits64(den);
  for (const auto& v : num) small = small && fits64(v);
  if (small) {
    Small s;
    s.den = static_cast<std::int64_t>(den);
    s.num.reserve(num.size());
    for (auto v : num) s.num.push_back(static_cast<std::int64_t>(v));
    return CycNum(ring, std::move(s));
  }
  Big b;
  b.den = to_mpz(den);
  b.num.reserve(num.size());
  for (auto v : num) b.num.push_back(to_mpz(v));
  return CycNum(ring, std::move(b));
}

CycNum::CycNum() : ring_(CycloRing::get(1)), rep_(Small{std::vector<std::int64_t>(1, 0), 1}) {}

CycNum CycNum::zero(int order) {
  const CycloRing* r = CycloRing::get(order);
  return CycNum(r, Small{std::vector<std::int64_t>(static_cast<std::size_t>(r->degree()), 0), 1});
}

CycNum CycNum::one(int order) { return from_int(order, 1); }

CycNum CycNum::from_int(int order, std::int64_t v) {
  CycNum z = zero(order);
  std::get<Small>(z.rep_).num[0] = v;
  return z;
}

CycNum CycNum::rational(int order, const mpq_class& r) {
  mpq_class c = r;
  c.canonicalize();
  const CycloRing* ring = CycloRing::get(order);
  Big b;
  b.num.assign(static_cast<std::size_t>(ring->degree()), 0);
  b.num[0] = c.get_num();
  b.den = c.get_den();
  return canonical(ring, std::move(b));
}

CycNum CycNum::from_coeffs(int order, std::span<const mpq_class> coeffs) {
  const CycloRing* ring = CycloRing::get(order);
  mpz_class l = 1;
  for (const auto& c : coeffs) {
    mpq_class t = c;
    t.canonicalize();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.get_den_mpz_t());
  }
  std::vector<mpz_class> num(std::max(coeffs.size(), static_cast<std::size_t>(ring->degree())));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    mpq_class t = coeffs[i] * l;
    t.canonicalize();
    num[i] = t.get_num();
  }
  reduce_big(num, *ring);
  return canonical(ring, Big{std::move(num), l});
}

CycNum CycNum::canonical(const CycloRing* ring, Big b) {
  if (b.den == 0) throw std::domain_error("zero denominator");
  if (b.den < 0) {
    b.den = -b.den;
    for (auto& v : b.num) v = -v;
  }
  mpz_class g = b.den;
  for (const auto& v : b.num) {
    if (g == 1) break;
    if (v != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  bool all_zero = std::all_of(b.num.begin(), b.num.end(), [](const mpz_class& v) { return v == 0; });
  if (all_zero) {
    b.den = 1;
  } else if (g != 1) {
    for (auto& v : b.num) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.den.get_mpz_t(), b.den.get_mpz_t(), g.get_mpz_t());
  }
  bool small = mpz_fits64(b.den);
  for (const auto& v : b.num) small = small && mpz_fits64(v);
  if (!small) return CycNum(ring, std::move(b));
  Small s;
  s.den = mpz_to64(b.den);
  s.num.reserve(b.num.size());
  for (const auto& v : b.num) s.num.push_back(mpz_to64(v));
  return CycNum(ring, std::move(s));
}

CycNum::Big CycNum::to_big() const {
  if (const auto* b = std::get_if<Big>(&rep_)) return *b;
  const auto& s = std::get<Small>(rep_);
  Big b;
  b.num.reserve(s.num.size());
  for (auto v : s.num) b.num.push_back(to_mpz(v));
  b.den = to_mpz(s.den);
  return b;
}

void CycNum::check_ring(const CycNum& b) const {
  if (ring_ != b.ring_) {
    throw std::invalid_argument("cyclotomic orders differ: " + std::to_string(order()) + " vs " +
                                std::to_string(b.order()));
  }
}

bool CycNum::is_scalar() const {
  return std::visit(
      [](const auto& r) {
        for (std::size_t i = 1; i < r.num.size(); ++i) {
          if (r.num[i] != 0) return false;
        }
        return true;
      },
      rep_);
}

std::vector<mpq_class> CycNum::coeffs() const {
  Big b = to_big();
  std::vector<mpq_class> out;
  out.reserve(b.num.size());
  for (auto& v : b.num) {
    mpq_class c(v, b.den);
    c.canonicalize();
    out.push_back(std::move(c));
  }
  return out;
}

mpq_class CycNum::coeff(std::size_t i) const {
  return std::visit(
      [i](const auto& r) {
        mpq_class c;
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, Small>) {
          c = mpq_class(to_mpz(r.num.at(i)), to_mpz(r.den));
        } else {
          c = mpq_class(r.num.at(i), r.den);
        }
        c.canonicalize();
        return c;
      },
      rep_);
}

mpz_class CycNum::denominator() const { return to_big().den; }

std::vector<mpz_class> CycNum::numerators() const { return to_big().num; }

bool CycNum::is_zero() const {
  return std::visit(
      [](const auto& r) { return std::all_of(r.num.begin(), r.num.end(), [](const auto& v) { return v == 0; }); },
      rep_);
}

bool CycNum::is_one() const {
  auto r = as_rational();
  return r && *r == 1;
}

std::optional<mpq_class> CycNum::as_rational() const {
  if (!is_scalar()) return std::nullopt;
  return coeff(0);
}

CycNum CycNum::operator-() const {
  if (const auto* s = std::get_if<Small>(&rep_)) {
    Small out = *s;
    bool ok = true;
    for (auto& v : out.num) {
      if (v == std::numeric_limits<std::int64_t>::min()) ok = false;
      v = -v;
    }
    if (ok) return CycNum(ring_, std::move(out));
  }
  Big b = to_big();
  for (auto& v : b.num) v = -v;
  return canonical(ring_, std::move(b));
}

CycNum& CycNum::operator+=(const CycNum& b) {
  check_ring(b);
  if (b.is_zero()) return *this;
  if (is_small() && b.is_small()) {
    const auto& x = std::get<Small>(rep_);
    const auto& y = std::get<Small>(b.rep_);
    try {
      if (x.den == y.den) {
        std::vector<i128> num(x.num.size());
        for (std::size_t i = 0; i < num.size(); ++i) num[i] = static_cast<i128>(x.num[i]) + y.num[i];
        *this = CycNum::from_wide(ring_, std::move(num), x.den);
        return *this;
      }
      const std::int64_t g = std::gcd(x.den, y.den);
      const i128 fx = y.den / g;
      const i128 fy = x.den / g;
      const i128 den = mul_ck(fx, x.den);
      std::vector<i128> num(x.num.size());
      for (std::size_t i = 0; i < num.size(); ++i) {
        num[i] = add_ck(mul_ck(x.num[i], fx), mul_ck(y.num[i], fy));
      }
      *this = CycNum::from_wide(ring_, std::move(num), den);
      return *this;
    } catch (const Overflow&) {
    }
  }
  Big x = to_big();
  Big y = b.to_big();
  Big r;
  r.den = x.den * y.den;
  r.num.resize(x.num.size());
  for (std::size_t i = 0; i < r.num.size(); ++i) r.num[i] = x.num[i] * y.den + y.num[i] * x.den;
  *this = canonical(ring_, std::move(r));
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& b) { return *this += -b; }

CycNum& CycNum::operator*=(const CycNum& b) {
  *this = *this * b;
  return *this;
}

CycNum operator*(const CycNum& a, const CycNum& b) {
  a.check_ring(b);
  if (a.is_zero() || b.is_zero()) return CycNum::zero(a.order());
  const CycloRing* ring = a.ring_;
  if (a.is_scalar() && !b.is_scalar()) return b * a;
  if (a.is_small() && b.is_small()) {
    const auto& x = std::get<CycNum::Small>(a.rep_);
    const auto& y = std::get<CycNum::Small>(b.rep_);
    try {
      const std::size_t d = x.num.size();
      const i128 den = static_cast<i128>(x.den) * y.den;
      if (b.is_scalar()) {
        const i128 s = y.num[0];
        std::vector<i128> num(d);
        for (std::size_t i = 0; i < d; ++i) num[i] = static_cast<i128>(x.num[i]) * s;
        return CycNum::from_wide(ring, std::move(num), den);
      }
      std::vector<i128> prod(2 * d - 1, 0);
      for (std::size_t i = 0; i < d; ++i) {
        const std::int64_t xi = x.num[i];
        if (xi == 0) continue;
        i128* out = prod.data() + i;
        for (std::size_t j = 0; j < d; ++j) {
          out[j] = add_ck(out[j], static_cast<i128>(xi) * y.num[j]);
        }
      }
      reduce_wide(prod, *ring);
      return CycNum::from_wide(ring, std::move(prod), den);
    } catch (const Overflow&) {
    }
  }
  CycNum::Big x = a.to_big();
  CycNum::Big y = b.to_big();
  const std::size_t d = x.num.size();
  std::vector<mpz_class> prod(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (x.num[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      mpz_addmul(prod[i + j].get_mpz_t(), x.num[i].get_mpz_t(), y.num[j].get_mpz_t());
    }
  }
  reduce_big(prod, *ring);
  return CycNum::canonical(ring, CycNum::Big{std::move(prod), x.den * y.den});
}

CycNum operator*(const CycNum& a, const mpq_class& r) {
  return a * CycNum::rational(a.order(), r);
}

CycNum operator/(const CycNum& a, const CycNum& b) { return a * inv(b); }

bool operator==(const CycNum& a, const CycNum& b) {
  a.check_ring(b);
  if (a.rep_.index() != b.rep_.index()) return false;
  if (const auto* x = std::get_if<CycNum::Small>(&a.rep_)) {
    const auto& y = std::get<CycNum::Small>(b.rep_);
    return x->den == y.den && x->num == y.num;
  }
  const auto& x = std::get<CycNum::Big>(a.rep_);
  const auto& y = std::get<CycNum::Big>(b.rep_);
  return x.den == y.den && x.num == y.num;
}

CycNum CycNum::mul_zeta(long k) const {
  const int n = ring_->order();
  long s = k % n;
  if (s < 0) s += n;
  if (s == 0 || is_zero()) return *this;
  if (const auto* x = std::get_if<Small>(&rep_)) {
    try {
      std::vector<i128> buf(static_cast<std::size_t>(n), 0);
      for (std::size_t i = 0; i < x->num.size(); ++i) {
        buf[(i + static_cast<std::size_t>(s)) % static_cast<std::size_t>(n)] = x->num[i];
      }
      reduce_wide(buf, *ring_);
      return CycNum::from_wide(ring_, std::move(buf), x->den);
    } catch (const Overflow&) {
    }
  }
  Big b = to_big();
  std::vector<mpz_class> buf(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < b.num.size(); ++i) {
    buf[(i + static_cast<std::size_t>(s)) % static_cast<std::size_t>(n)] = b.num[i];
  }
  reduce_big(buf, *ring_);
  return canonical(ring_, Big{std::move(buf), b.den});
}

CycNum CycNum::galois(long a) const {
  const int n = ring_->order();
  long s = a % n;
  if (s < 0) s += n;
  if (std::gcd(s, static_cast<long>(n)) != 1) {
    throw std::invalid_argument("galois exponent must be a unit modulo N");
  }
  Big b = to_big();
  std::vector<mpz_class> buf(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < b.num.size(); ++i) {
    buf[(i * static_cast<std::size_t>(s)) % static_cast<std::size_t>(n)] += b.num[i];
  }
  reduce_big(buf, *ring_);
  return canonical(ring_, Big{std::move(buf), b.den});
}

std::complex<double> CycNum::to_complex() const {
  return std::visit(
      [this](const auto& r) {
        std::complex<double> acc = 0;
        double den;
        if constexpr (std::is_same_v<std::decay_t<decltype(r)>, Small>) {
          den = static_cast<double>(r.den);
          for (std::size_t i = 0; i < r.num.size(); ++i) {
            if (r.num[i] != 0) acc += static_cast<double>(r.num[i]) * ring_->root(static_cast<long>(i));
          }
        } else {
          den = r.den.get_d();
          for (std::size_t i = 0; i < r.num.size(); ++i) {
            if (r.num[i] != 0) acc += r.num[i].get_d() * ring_->root(static_cast<long>(i));
          }
        }
        return acc / den;
      },
      rep_);
}

std::string CycNum::to_string() const {
  std::vector<mpq_class> c = coeffs();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!first) os << (c[i] < 0 ? " - " : " + ");
    else if (c[i] < 0) os << "-";
    mpq_class m = abs(c[i]);
    if (i == 0) {
      os << m;
    } else {
      if (m != 1) os << m << "*";
      os << "z" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    first = false;
  }
  if (first) os << "0";
  os << " (N=" << order() << ")";
  return os.str();
}

CycNum zeta_power(int order, long k) { return CycNum::one(order).mul_zeta(k); }

CycNum inv(const CycNum& a) {
  if (a.is_zero()) throw std::domain_error("division by zero in Q(zeta_N)");
  if (auto r = a.as_rational()) return CycNum::rational(a.order(), 1 / *r);
  const int n = a.order();
  CycPoly r0 = cyclotomic_polynomial(n);
  CycPoly r1(a.coeffs());
  CycPoly s0;
  CycPoly s1 = CycPoly::monomial(0);
  while (!r1.is_zero()) {
    auto [quo, rem] = CycPoly::divmod(r0, r1);
    CycPoly s2 = s0 - quo * s1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0) throw std::logic_error("non-unit gcd with cyclotomic modulus");
  const mpq_class scale = 1 / r0.coeff(0);
  std::vector<mpq_class> c = s0.coeffs();
  for (auto& v : c) v *= scale;
  return CycNum::from_coeffs(n, c);
}

std::optional<mpq_class> as_rational(const CycNum& a) { return a.as_rational(); }


// ---------------------------------------------------------------------------
// ZetaAccumulator

ZetaAccumulator::ZetaAccumulator(const CycloRing* ring)
    : ring_(ring), buf_(static_cast<std::size_t>(ring->order()), 0), overflow_(CycNum::zero(ring->order())) {}

void ZetaAccumulator::add_unit(long k, std::int64_t mult) {
  if (mult == 0) return;
  const long n = ring_->order();
  long s = k % n;
  if (s < 0) s += n;
  if (!spilled_) {
    try {
      auto& slot = buf_[static_cast<std::size_t>(s)];
      slot = add_ck(slot, static_cast<i128>(mult) * den_);
      return;
    } catch (const Overflow&) {
      spill();
    }
  }
  overflow_ += CycNum::from_int(static_cast<int>(n), mult).mul_zeta(s);
}

void ZetaAccumulator::rescale(std::int64_t new_den) {
  const i128 f = new_den / den_;
  for (auto& v : buf_) {
    if (v != 0) v = mul_ck(v, f);
  }
  den_ = new_den;
}

void ZetaAccumulator::add(const CycNum& x, long k) {
  if (x.ring_ != ring_) x.check_ring(CycNum::zero(ring_->order()));
  if (x.is_zero()) return;
  const std::size_t n = static_cast<std::size_t>(ring_->order());
  long sl = k % static_cast<long>(n);
  if (sl < 0) sl += static_cast<long>(n);
  const std::size_t s = static_cast<std::size_t>(sl);
  if (!spilled_ && x.is_small()) {
    const auto& xs = std::get<CycNum::Small>(x.rep_);
    std::vector<i128> saved;
    try {
      if (den_ % xs.den != 0) {
        const std::int64_t g = std::gcd(den_, xs.den);
        const i128 l = mul_ck(den_ / g, xs.den);
        if (!fits64(l)) throw Overflow{};
        saved = buf_;
        rescale(static_cast<std::int64_t>(l));
      }
      const i128 f = den_ / xs.den;
      // Apply to a scratch copy of touched slots so a mid-way overflow leaves the buffer intact.
      const std::size_t d = xs.num.size();
      std::vector<i128> upd(d);
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t pos = (i + s) % n;
        upd[i] = xs.num[i] == 0 ? buf_[pos] : add_ck(buf_[pos], mul_ck(xs.num[i], f));
      }
      for (std::size_t i = 0; i < d; ++i) buf_[(i + s) % n] = upd[i];
      return;
    } catch (const Overflow&) {
      if (!saved.empty()) {
        buf_ = std::move(saved);
      }
      spill();
    }
  }
  if (!spilled_) spill();
  overflow_ += x.mul_zeta(static_cast<long>(s));
}

void ZetaAccumulator::spill() {
  if (spilled_) return;
  overflow_ = value();
  std::fill(buf_.begin(), buf_.end(), 0);
  den_ = 1;
  spilled_ = true;
}

CycNum ZetaAccumulator::value() const {
  if (spilled_) return overflow_;
  try {
    std::vector<i128> w = buf_;
    reduce_wide(w, *ring_);
    return CycNum::from_wide(ring_, std::move(w), den_);
  } catch (const Overflow&) {
  }
  std::vector<mpz_class> w;
  w.reserve(buf_.size());
  for (auto v : buf_) w.push_back(to_mpz(v));
  reduce_big(w, *ring_);
  return CycNum::canonical(ring_, CycNum::Big{std::move(w), to_mpz(den_)});
}

}  // namespace ffhyper
