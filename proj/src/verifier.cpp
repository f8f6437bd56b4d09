#include "ffhyper/verifier.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "ffhyper/report_json.hpp"

namespace ffhyper {

std::string to_string(Mode m) { return m == Mode::Exhaustive ? "exhaustive" : "sample"; }
std::string to_string(BackendKind b) { return b == BackendKind::Exact ? "exact" : "float"; }
std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inapplicable: return "inapplicable";
    case Status::Error: return "error";
  }
  return "error";
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSat / a) return kSat;
  return a * b;
}

std::uint64_t variant_size(const FieldCtx& k, const Variant& v) {
  std::uint64_t s = 1;
  for (int i = 0; i < v.chars; ++i) s = sat_mul(s, static_cast<std::uint64_t>(k.q() - 1));
  for (auto d : v.points) s = sat_mul(s, static_cast<std::uint64_t>(d == Dom::All ? k.q() : k.q() - 1));
  return s;
}

std::vector<const Variant*> admissible(const IdentitySpec& spec, int max_arity, int min_arity = 0) {
  std::vector<const Variant*> out;
  for (const auto& v : spec.variants)
    if (v.dim <= max_arity && v.dim >= min_arity) out.push_back(&v);
  return out;
}

/// Visits every tuple of a variant; chars vary slowest-first in slot order,
/// then points.
template <class F>
bool for_each_tuple(const FieldCtx& k, const Variant& v, F&& f) {
  Tuple t;
  t.n = v.n;
  t.aux = v.aux;
  t.chars.assign(static_cast<std::size_t>(v.chars), 0);
  std::vector<int> lo, hi;
  for (int i = 0; i < v.chars; ++i) {
    lo.push_back(0);
    hi.push_back(k.q() - 1);
  }
  for (auto d : v.points) {
    lo.push_back(d == Dom::All ? 0 : 1);
    hi.push_back(k.q());
  }
  std::vector<int> idx = lo;
  const std::size_t slots = idx.size();
  for (;;) {
    t.chars.assign(idx.begin(), idx.begin() + v.chars);
    t.points.clear();
    for (std::size_t i = static_cast<std::size_t>(v.chars); i < slots; ++i) t.points.push_back({idx[i]});
    if (!f(t)) return false;
    std::size_t i = slots;
    while (i > 0) {
      --i;
      if (++idx[i] < hi[i]) break;
      idx[i] = lo[i];
      if (i == 0) return true;
    }
    if (slots == 0) return true;
  }
}

Tuple draw_tuple(const FieldCtx& k, const std::vector<const Variant*>& vs, std::uint64_t& state) {
  const Variant& v = *vs[splitmix64(state) % vs.size()];
  Tuple t;
  t.n = v.n;
  t.aux = v.aux;
  const std::uint64_t m = static_cast<std::uint64_t>(k.q() - 1), q = static_cast<std::uint64_t>(k.q());
  for (int i = 0; i < v.chars; ++i) t.chars.push_back(static_cast<int>(splitmix64(state) % m));
  for (auto d : v.points) {
    const std::uint64_t r = splitmix64(state);
    t.points.push_back({static_cast<int>(d == Dom::All ? r % q : 1 + r % m)});
  }
  return t;
}

std::vector<std::pair<std::string, std::string>> render(const CycNum& x) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : x.coeffs()) out.emplace_back(c.get_num().get_str(), c.get_den().get_str());
  return out;
}

std::vector<std::pair<std::string, std::string>> render(const std::complex<double>& x) {
  char re[64], im[64];
  std::snprintf(re, sizeof re, "%.17g", x.real());
  std::snprintf(im, sizeof im, "%.17g", x.imag());
  return {{re, im}};
}

bool same(const CycNum& a, const CycNum& b) { return a == b; }
bool same(const std::complex<double>& a, const std::complex<double>& b) { return approx_equal(a, b); }

CycNum perturb(const CycNum& x) { return x + CycNum::one(x.order()); }
std::complex<double> perturb(const std::complex<double>& x) { return x + 1.0; }

std::string describe(const Tuple& t) {
  std::string s = "n=" + std::to_string(t.n) + " aux=" + std::to_string(t.aux) + " chars=[";
  for (std::size_t i = 0; i < t.chars.size(); ++i) s += (i ? "," : "") + std::to_string(t.chars[i]);
  s += "] points=[";
  for (std::size_t i = 0; i < t.points.size(); ++i) s += (i ? "," : "") + std::to_string(t.points[i].v);
  return s + "]";
}

template <class Backend, class Eval>
void run_tuples(const FieldCtx& k, const IdentitySpec& spec, const std::vector<const Variant*>& vs,
                const RunOptions& opt, Backend& E, Eval eval, Report& rep) {
  const bool fault = !opt.inject_fault.empty() && opt.inject_fault == spec.id;
  auto visit = [&](const Tuple& t) {
    if (!spec.hypothesis(k, t)) {
      ++rep.skipped;
      return true;
    }
    ++rep.checked;
    auto parts = eval(E, t);
    if (fault && !parts.empty()) parts[0].rhs = perturb(parts[0].rhs);
    for (const auto& part : parts) {
      if (same(part.lhs, part.rhs)) continue;
      ++rep.failure_count;
      if (rep.failures.size() < opt.max_witnesses) {
        Witness w;
        w.n = t.n;
        w.aux = t.aux;
        w.params = t.chars;
        for (auto x : t.points) w.point.push_back(k.coeffs(x));
        w.part = part.name;
        w.lhs = render(part.lhs);
        w.rhs = render(part.rhs);
        rep.failures.push_back(std::move(w));
      }
    }
    return true;
  };
  auto guarded = [&](const Tuple& t) {
    try {
      return visit(t);
    } catch (const std::exception& e) {
      throw VerifierError("evaluation failed at " + describe(t) + ": " + e.what());
    }
  };
  if (opt.mode == Mode::Exhaustive) {
    for (const Variant* v : vs) for_each_tuple(k, *v, guarded);
  } else {
    std::uint64_t state = opt.seed ^ fnv1a64(spec.id) ^ (static_cast<std::uint64_t>(k.q()) * 0x9E3779B97F4A7C15ULL);
    for (std::uint64_t i = 0; i < opt.samples; ++i) guarded(draw_tuple(k, vs, state));
  }
}

}  // namespace

std::uint64_t exhaustive_size(const FieldCtx& k, const IdentitySpec& spec, int max_arity, int min_arity) {
  std::uint64_t s = 0;
  for (const Variant* v : admissible(spec, max_arity, min_arity)) {
    const std::uint64_t x = variant_size(k, *v);
    s = (s > kSat - x) ? kSat : s + x;
  }
  return s;
}

Report check_identity(const FieldPtr& field, std::string_view id, const RunOptions& opt) {
  const FieldCtx& k = *field;
  const IdentitySpec* spec = find_identity(id);
  if (!spec) throw VerifierError("unknown identity '" + std::string(id) + "'");
  const auto vs = admissible(*spec, opt.max_arity, opt.min_arity);
  if (vs.empty())
    throw VerifierError("identity '" + spec->id + "' has no variant with arity in [" + std::to_string(opt.min_arity) +
                        ", " + std::to_string(opt.max_arity) + "]");
  Report rep;
  rep.id = spec->id;
  rep.p = k.p();
  rep.r = k.r();
  rep.q = k.q();
  rep.mode = opt.mode;
  rep.backend = opt.backend;
  const std::uint64_t size = exhaustive_size(k, *spec, opt.max_arity, opt.min_arity);
  if (opt.mode == Mode::Exhaustive && size > opt.budget)
    throw VerifierError("exhaustive sweep of '" + spec->id + "' at q=" + std::to_string(k.q()) + " needs " +
                        std::to_string(size) + " tuples, over the budget of " + std::to_string(opt.budget) +
                        "; use sample mode");
  const auto start = std::chrono::steady_clock::now();
  if (spec->requires_odd_p && k.p() == 2) {
    rep.status = Status::Inapplicable;
    rep.skipped = opt.mode == Mode::Exhaustive ? size : opt.samples;
  } else {
    if (opt.backend == BackendKind::Exact) {
      ExactBackend E(field);
      run_tuples(k, *spec, vs, opt, E, spec->exact, rep);
    } else {
      FloatBackend E(field);
      run_tuples(k, *spec, vs, opt, E, spec->flt, rep);
    }
    rep.status = rep.failure_count == 0 ? Status::Pass : Status::Fail;
  }
  if (opt.timings)
    rep.duration_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SuiteReport run_suite(const std::vector<FieldPtr>& fields, const std::vector<std::string>& ids,
                      const RunOptions& opt) {
  struct Job {
    FieldPtr field;
    std::string id;
  };
  std::vector<Job> jobs;
  for (const auto& f : fields)
    for (const auto& id : ids) jobs.push_back({f, id});
  std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    if (a.field->q() != b.field->q()) return a.field->q() < b.field->q();
    if (a.field->p() != b.field->p()) return a.field->p() < b.field->p();
    return a.id < b.id;
  });
  std::vector<Report> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      const Job& j = jobs[i];
      try {
        out[i] = check_identity(j.field, j.id, opt);
      } catch (const std::exception& e) {
        Report r;
        r.id = j.id;
        r.p = j.field->p();
        r.r = j.field->r();
        r.q = j.field->q();
        r.mode = opt.mode;
        r.backend = opt.backend;
        r.status = Status::Error;
        r.error = e.what();
        out[i] = std::move(r);
      }
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteReport s;
  s.reports = std::move(out);
  for (const auto& r : s.reports) {
    s.checked += r.checked;
    s.skipped += r.skipped;
    s.failures += r.failure_count;
    if (r.status == Status::Error) ++s.errors;
  }
  s.digest = suite_digest(s.reports);
  return s;
}

nlohmann::json to_json(const Witness& w) {
  auto coeffs = [](const std::vector<std::pair<std::string, std::string>>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& [x, y] : v) a.push_back({x, y});
    return a;
  };
  return {{"n", w.n},       {"aux", w.aux},         {"params", w.params},   {"point", w.point},
          {"part", w.part}, {"lhs", coeffs(w.lhs)}, {"rhs", coeffs(w.rhs)}};
}

nlohmann::json to_json(const Report& r, bool with_duration) {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& w : r.failures) fails.push_back(to_json(w));
  nlohmann::json j = {{"identity", r.id},
                      {"p", r.p},
                      {"r", r.r},
                      {"q", r.q},
                      {"mode", to_string(r.mode)},
                      {"backend", to_string(r.backend)},
                      {"status", to_string(r.status)},
                      {"checked", r.checked},
                      {"skipped", r.skipped},
                      {"failure_count", r.failure_count},
                      {"failures", fails}};
  if (!r.error.empty()) j["error"] = r.error;
  if (with_duration) j["duration_ms"] = r.duration_ms ? nlohmann::json(*r.duration_ms) : nlohmann::json(nullptr);
  return j;
}

std::string suite_digest(const std::vector<Report>& reports) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : reports) a.push_back(to_json(r, false));
  const std::string s = a.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

ProbeResult probe_hypothesis(const FieldPtr& field, std::string_view id, int max_arity) {
  const FieldCtx& k = *field;
  const IdentitySpec* spec = find_identity(id);
  if (!spec) throw VerifierError("unknown identity '" + std::string(id) + "'");
  ProbeResult res;
  res.id = spec->id;
  res.q = k.q();
  if (spec->requires_odd_p && k.p() == 2) return res;
  ExactBackend E(field);
  for (const Variant* v : admissible(*spec, max_arity)) {
    for_each_tuple(k, *v, [&](const Tuple& t) {
      if (spec->hypothesis(k, t)) return true;
      try {
        const auto parts = spec->exact(E, t);
        ++res.evaluated;
        for (const auto& p : parts)
          if (!(p.lhs == p.rhs)) {
            ++res.unequal;
            break;
          }
      } catch (const std::exception&) {
        ++res.undefined;
      }
      return true;
    });
  }
  return res;
}

namespace {

struct FamilyShape {
  std::string name;
  int chars;
  int points;
};

const std::vector<FamilyShape>& invariance_families() {
  static const std::vector<FamilyShape> f = {{"F_A", 5, 2}, {"F_B", 5, 2}, {"F_C", 4, 2},
                                             {"F_D", 4, 2}, {"2F1", 3, 1}, {"3F2", 5, 1}};
  return f;
}

template <class B>
CycNum family_value(B& E, std::size_t fam, const std::vector<int>& c, const std::vector<FqElem>& x) {
  auto C = [&](std::size_t i) { return E.ch(c[i]); };
  std::vector<Fq> X;
  for (auto e : x) X.push_back(E.el(e));
  switch (fam) {
    case 0: return E.FA(C(0), {C(1), C(2)}, {C(3), C(4)}, X);
    case 1: return E.FB({C(0), C(1)}, {C(2), C(3)}, C(4), X);
    case 2: return E.FC(C(0), C(1), {C(2), C(3)}, X);
    case 3: return E.FD(C(0), {C(1), C(2)}, C(3), X);
    case 4: return E.F({C(0), C(1)}, {C(2)}, X[0]);
    default: return E.F({C(0), C(1), C(2)}, {C(3), C(4)}, X[0]);
  }
}

template <class F>
void for_each_family_tuple(const FieldCtx& k, const FamilyShape& s, F&& f) {
  Variant v;
  v.chars = s.chars;
  v.points.assign(static_cast<std::size_t>(s.points), Dom::All);
  for_each_tuple(k, v, [&](const Tuple& t) {
    f(t.chars, t.points);
    return true;
  });
}

}  // namespace

std::vector<InvarianceResult> check_psi_independence(const FieldPtr& field, int max_twists) {
  const FieldCtx& k = *field;
  std::vector<InvarianceResult> out;
  ExactBackend E(field);
  for (std::size_t fam = 0; fam < invariance_families().size(); ++fam) {
    const auto& shape = invariance_families()[fam];
    InvarianceResult r{"psi/" + shape.name, k.q(), 0, 0};
    int twists = 0;
    for (int a = 2; a < k.q() && twists < max_twists; ++a, ++twists) {
      ExactBackend& T = E.twisted({a});
      for_each_family_tuple(k, shape, [&](const std::vector<int>& c, const std::vector<FqElem>& x) {
        ++r.compared;
        if (!(family_value(E, fam, c, x) == family_value(T, fam, c, x))) ++r.mismatches;
      });
    }
    out.push_back(r);
  }
  return out;
}

std::vector<InvarianceResult> check_generator_independence(const FieldPtr& field, int generator_rank) {
  const FieldCtx& k = *field;
  FieldOptions o;
  o.generator_rank = generator_rank;
  FieldPtr other = build_field(k.p(), k.r(), o);
  const int m = k.q() - 1;
  const int u = k.dlog(other->generator());
  int uinv = 1;
  while ((static_cast<long>(u) * uinv) % m != 1 % m) ++uinv;
  std::vector<InvarianceResult> out;
  ExactBackend E1(field), E2(other);
  for (std::size_t fam = 0; fam < invariance_families().size(); ++fam) {
    const auto& shape = invariance_families()[fam];
    InvarianceResult r{"generator/" + shape.name, k.q(), 0, 0};
    for_each_family_tuple(k, shape, [&](const std::vector<int>& c, const std::vector<FqElem>& x) {
      std::vector<int> c1;
      for (int j : c) c1.push_back(static_cast<int>((static_cast<long>(j) * uinv) % m));
      ++r.compared;
      if (!(family_value(E2, fam, c, x) == family_value(E1, fam, c1, x))) ++r.mismatches;
    });
    out.push_back(r);
  }
  return out;
}

CrossCheckResult cross_backend_check(const FieldPtr& field, std::uint64_t count, std::uint64_t seed) {
  const FieldCtx& k = *field;
  ExactBackend X(field);
  FloatBackend Y(field);
  CrossCheckResult res;
  std::uint64_t state = seed ^ fnv1a64("cross-backend") ^ static_cast<std::uint64_t>(k.q());
  const auto m = static_cast<std::uint64_t>(k.q() - 1), q = static_cast<std::uint64_t>(k.q());
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t kind = splitmix64(state) % 8;
    std::vector<int> c;
    for (int j = 0; j < 5; ++j) c.push_back(static_cast<int>(splitmix64(state) % m));
    std::vector<FqElem> x{{static_cast<int>(splitmix64(state) % q)}, {static_cast<int>(splitmix64(state) % q)}};
    auto eval = [&](auto& E) {
      auto C = [&](std::size_t j) { return E.ch(c[j]); };
      const Fq a = E.el(x[0]), b = E.el(x[1]);
      switch (kind) {
        case 0: return E.g(C(0));
        case 1: return E.jacobi({C(0), C(1)});
        case 2: return E.F({C(0), C(1)}, {C(2)}, a);
        case 3: return E.F({C(0), C(1), C(2)}, {C(3), C(4)}, a);
        case 4: return E.FA(C(0), {C(1), C(2)}, {C(3), C(4)}, {a, b});
        case 5: return E.FB({C(0), C(1)}, {C(2), C(3)}, C(4), {a, b});
        case 6: return E.FC(C(0), C(1), {C(2), C(3)}, {a, b});
        default: return E.FD(C(0), {C(1), C(2)}, C(3), {a, b});
      }
    };
    const std::complex<double> ex = eval(X).to_complex(), fl = eval(Y);
    ++res.compared;
    const double rel = std::abs(ex - fl) / std::max({1.0, std::abs(ex), std::abs(fl)});
    res.max_rel_error = std::max(res.max_rel_error, rel);
    if (!approx_equal(ex, fl)) ++res.mismatches;
  }
  return res;
}

}  // namespace ffhyper
