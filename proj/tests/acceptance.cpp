// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "ffhyper/cli.hpp"
#include "ffhyper/verifier.hpp"

#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace ffhyper;

namespace {

FieldPtr field(int q) {
  auto [p, r] = prime_power(q);
  return build_field(p, r);
}

std::vector<FieldPtr> fields(std::initializer_list<int> qs) {
  std::vector<FieldPtr> out;
  for (int q : qs) out.push_back(field(q));
  return out;
}

RunOptions exhaustive(int max_arity = 3) {
  RunOptions o;
  o.max_arity = max_arity;
  return o;
}

RunOptions sampled(std::uint64_t n, int max_arity = 3, int min_arity = 0) {
  RunOptions o;
  o.mode = Mode::Sample;
  o.samples = n;
  o.seed = 0;
  o.max_arity = max_arity;
  o.min_arity = min_arity;
  return o;
}

// Tallies suite runs; a criterion passes when nothing failed or errored and
// something was actually checked.
struct Tally {
  std::uint64_t reports = 0, checked = 0, skipped = 0, failures = 0, errors = 0, inapplicable = 0;
  std::vector<std::string> bad;

  void add(const SuiteReport& s) {
    for (const auto& r : s.reports) {
      ++reports;
      checked += r.checked;
      skipped += r.skipped;
      failures += r.failure_count;
      if (r.status == Status::Error) ++errors;
      if (r.status == Status::Inapplicable) ++inapplicable;
      if (r.status == Status::Fail || r.status == Status::Error)
        bad.push_back(r.id + "@q=" + std::to_string(r.q) + (r.error.empty() ? "" : " (" + r.error + ")"));
    }
  }
  void run(std::initializer_list<int> qs, const std::vector<std::string>& ids, const RunOptions& o) {
    add(run_suite(fields(qs), ids, o));
  }
  bool ok() const { return failures == 0 && errors == 0 && checked > 0; }
  std::string summary() const {
    std::ostringstream s;
    s << reports << " reports, " << checked << " checked, " << skipped << " skipped, " << inapplicable
      << " inapplicable, " << failures << " failures, " << errors << " errors";
    for (std::size_t i = 0; i < bad.size() && i < 5; ++i) s << "; " << bad[i];
    return s.str();
  }
};

int failed = 0;

template <class F>
void criterion(const char* tag, const char* name, F f) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = f(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %s %s: %s [%.1fs]\n", ok ? "PASS" : "FAIL", tag, name, detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failed;
}

const std::vector<std::string> kFoundations{"gauss-inversion", "jacobi-gauss", "poch-chain",
                                            "poch-invert",     "dup-gauss",    "dup-poch"};
const std::vector<std::string> kOneVariable{"psi-0F0", "int-1F0",     "int-1F1",  "ana-1F1",
                                            "int-3F2", "euler-gauss", "trans-2F1"};
const std::vector<std::string> kSumReps{"sumrep-FA", "sumrep-FB", "sumrep-FC-kummer", "sumrep-FC-double"};
const std::vector<std::string> kBranches{"gauss-quad-eps", "gauss-quad-bphi", "gauss-quad-b2"};

}  // namespace

int main() {
  criterion("A1", "foundations", [](std::string& d) {
    Tally t;
    t.run({3, 4, 5, 7, 8, 9, 11, 13, 16}, kFoundations, exhaustive());
    d = t.summary();
    return t.ok();
  });

  criterion("A2", "one-variable layer", [](std::string& d) {
    Tally t;
    t.run({3, 4, 5}, kOneVariable, exhaustive());
    t.run({7, 9, 11, 13}, kOneVariable, sampled(200));
    d = t.summary();
    return t.ok();
  });

  criterion("A3", "sum representations", [](std::string& d) {
    Tally t;
    t.run({3, 4, 5}, kSumReps, exhaustive(2));
    t.run({7, 9}, kSumReps, sampled(200, 2));
    t.run({5}, {"sumrep-FA"}, sampled(200, 3, 3));
    d = t.summary();
    return t.ok();
  });

  criterion("A4", "full registry", [](std::string& d) {
    std::set<std::string> done(kFoundations.begin(), kFoundations.end());
    done.insert(kOneVariable.begin(), kOneVariable.end());
    done.insert(kSumReps.begin(), kSumReps.end());
    std::vector<std::string> rest;
    for (const auto& s : registry())
      if (!done.count(s.id)) rest.push_back(s.id);
    Tally t;
    t.run({3, 4, 5}, rest, exhaustive());
    t.run({7, 8, 9, 11, 13}, rest, sampled(200));
    d = std::to_string(rest.size()) + " identities, " + t.summary();
    return t.ok();
  });

  criterion("A5", "quadratic transformation branches", [](std::string& d) {
    Tally t;
    bool each = true;
    for (int q : {5, 7, 9}) {
      auto s = run_suite({field(q)}, kBranches, exhaustive());
      for (const auto& r : s.reports) each = each && r.status == Status::Pass && r.checked > 0;
      t.add(s);
    }
    d = t.summary();
    return t.ok() && each;
  });

  criterion("A6", "psi and generator independence", [](std::string& d) {
    std::uint64_t compared = 0, mismatches = 0;
    bool each = true;
    for (int q : {5, 7, 9}) {
      auto k = field(q);
      // Every twist at q = 5; one twist at the larger fields to bound runtime.
      auto psi = check_psi_independence(k, q == 5 ? q : 1);
      auto gen = check_generator_independence(k);
      for (const auto* rs : {&psi, &gen})
        for (const auto& r : *rs) {
          compared += r.compared;
          mismatches += r.mismatches;
          each = each && r.compared > 0;
        }
    }
    d = std::to_string(compared) + " comparisons, " + std::to_string(mismatches) + " mismatches";
    return each && mismatches == 0;
  });

  criterion("A7", "determinism", [](std::string& d) {
    const std::vector<std::string> args{"--q-list", "4,5,7", "--all",  "--mode", "sample",
                                        "--samples", "30",   "--seed", "0",      "--json"};
    std::ostringstream a, b, err;
    const int ca = run_cli(args, a, err), cb = run_cli(args, b, err);
    d = std::to_string(a.str().size()) + " bytes, exit " + std::to_string(ca) + "/" + std::to_string(cb);
    return ca == 0 && cb == 0 && !a.str().empty() && a.str() == b.str();
  });

  criterion("A8", "cross-backend agreement", [](std::string& d) {
    auto r = cross_backend_check(field(13), 1000, 0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%llu evaluations, %llu mismatches, max rel error %.3g",
                  static_cast<unsigned long long>(r.compared), static_cast<unsigned long long>(r.mismatches),
                  r.max_rel_error);
    d = buf;
    return r.compared == 1000 && r.mismatches == 0;
  });

  return failed == 0 ? 0 : 1;
}
