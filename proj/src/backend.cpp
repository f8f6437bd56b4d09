#include "ffhyper/backend.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ffhyper {

std::shared_ptr<const FloatTables> FloatTables::build(FieldPtr field, AddChar psi) {
  if (psi.a.v == 0) throw std::invalid_argument("additive character twist must be nonzero");
  std::shared_ptr<FloatTables> t(new FloatTables());
  const FieldCtx& k = *field;
  t->field_ = std::move(field);
  t->psi_ = psi;
  t->m_ = k.q() - 1;
  const int N = k.N();
  for (int i = 0; i < N; ++i) {
    const double a = 2.0 * std::numbers::pi * i / N;
    t->roots_.emplace_back(std::cos(a), std::sin(a));
  }
  const double q = k.q();
  for (int j = 0; j < t->m_; ++j) {
    Value g = 0;
    for (int x = 1; x < k.q(); ++x) {
      g -= t->unit(add_char_value(k, psi, {x}).k + mul_char_value(k, {j}, {x}).k);
    }
    t->g_.push_back(g);
    t->gc_.push_back(j == 0 ? g * q : g);
  }
  for (int j = 0; j < t->m_; ++j) {
    t->ginv_.push_back(1.0 / t->g_[static_cast<std::size_t>(j)]);
    t->gcinv_.push_back(1.0 / t->gc_[static_cast<std::size_t>(j)]);
  }
  return t;
}

FloatTables::Value FloatTables::unit(long k) const {
  const long n = static_cast<long>(roots_.size());
  long r = k % n;
  if (r < 0) r += n;
  return roots_[static_cast<std::size_t>(r)];
}

FloatTables::Value FloatTables::jacobi(std::span<const MulChar> chars) const {
  const std::size_t n = chars.size();
  if (n < 2) throw std::invalid_argument("Jacobi sum needs at least two characters");
  MulChar prod{0};
  bool all_trivial = true;
  for (auto c : chars) {
    prod = mul(prod, c);
    all_trivial = all_trivial && c.j == 0;
  }
  const double q = field_->q();
  if (all_trivial) return (1.0 - std::pow(1.0 - q, static_cast<double>(n))) / q;
  Value v = gauss_circ_inv(prod);
  for (auto c : chars) v *= gauss(c);
  return v;
}

bool approx_equal(const std::complex<double>& a, const std::complex<double>& b, double tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

}  // namespace ffhyper
