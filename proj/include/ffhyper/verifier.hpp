#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffhyper/backend.hpp"

namespace ffhyper {

/// Domain of a point slot.
enum class Dom { All, NonZero };

/// One arity/shape choice of an identity: `n` and `aux` are free knobs read by
/// the evaluators, `chars` the number of character slots.
struct Variant {
  int n = 0;
  int aux = 0;
  int chars = 0;
  std::vector<Dom> points;
  int dim = 1;  // largest Lauricella arity touched, for the arity cap
};

struct Tuple {
  int n = 0;
  int aux = 0;
  std::vector<int> chars;
  std::vector<FqElem> points;
};

template <class V>
struct Part {
  std::string name;
  V lhs;
  V rhs;
};

using ExactParts = std::vector<Part<CycNum>>;
using FloatParts = std::vector<Part<std::complex<double>>>;

struct IdentitySpec {
  std::string id;
  std::string summary;
  bool requires_odd_p = false;
  std::vector<Variant> variants;
  std::function<bool(const FieldCtx&, const Tuple&)> hypothesis;
  std::function<ExactParts(ExactBackend&, const Tuple&)> exact;
  std::function<FloatParts(FloatBackend&, const Tuple&)> flt;
};

/// All registered identities in a fixed order.
const std::vector<IdentitySpec>& registry();
/// nullptr when the id is unknown.
const IdentitySpec* find_identity(std::string_view id);

enum class Mode { Exhaustive, Sample };
enum class BackendKind { Exact, Float };
enum class Status { Pass, Fail, Inapplicable, Error };

std::string to_string(Mode m);
std::string to_string(BackendKind b);
std::string to_string(Status s);

struct RunOptions {
  Mode mode = Mode::Exhaustive;
  std::uint64_t samples = 200;
  std::uint64_t seed = 0;
  BackendKind backend = BackendKind::Exact;
  int max_arity = 3;
  /// Skip variants below this arity (to target e.g. only n = 3).
  int min_arity = 0;
  std::uint64_t budget = 10'000'000;
  std::size_t max_witnesses = 10;
  bool timings = false;
  /// Test hook: corrupt the RHS of this identity.
  std::string inject_fault;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct Witness {
  int n = 0;
  int aux = 0;
  std::vector<int> params;
  std::vector<std::vector<int>> point;  // coefficient lists, low to high
  std::string part;
  /// Exact: one (num, den) per power-basis coordinate. Float: one (re, im).
  std::vector<std::pair<std::string, std::string>> lhs, rhs;
};

struct Report {
  std::string id;
  int p = 0, r = 0, q = 0;
  Mode mode = Mode::Exhaustive;
  BackendKind backend = BackendKind::Exact;
  Status status = Status::Pass;
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::uint64_t failure_count = 0;
  std::vector<Witness> failures;  // first max_witnesses failures
  std::optional<double> duration_ms;
  std::string error;
};

struct SuiteReport {
  std::vector<Report> reports;
  std::uint64_t checked = 0, skipped = 0, failures = 0, errors = 0;
  std::string digest;
  bool ok() const { return failures == 0 && errors == 0; }
};

class VerifierError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tuples an exhaustive sweep of `spec` over `k` would enumerate.
std::uint64_t exhaustive_size(const FieldCtx& k, const IdentitySpec& spec, int max_arity, int min_arity = 0);

/// Throws VerifierError on unknown id, arity over cap or exhaustive budget overrun.
Report check_identity(const FieldPtr& field, std::string_view id, const RunOptions& opt);

/// Runs every id over every field; errors become reports with status Error.
/// Reports are ordered by (q, p, id).
SuiteReport run_suite(const std::vector<FieldPtr>& fields, const std::vector<std::string>& ids,
                      const RunOptions& opt);

/// SHA-256 over the canonical report content (durations excluded).
std::string suite_digest(const std::vector<Report>& reports);

/// splitmix64 step; the sampler's only source of randomness.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t fnv1a64(std::string_view s);

/// Diagnostic sweep over tuples that violate the hypothesis.
struct ProbeResult {
  std::string id;
  int q = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t unequal = 0;
  std::uint64_t undefined = 0;
};
ProbeResult probe_hypothesis(const FieldPtr& field, std::string_view id, int max_arity = 3);

/// Invariance of F_A..F_D (n = 2), 2F1 and 3F2 values, checked exhaustively.
struct InvarianceResult {
  std::string what;
  int q = 0;
  std::uint64_t compared = 0;
  std::uint64_t mismatches = 0;
};
/// Values under psi_1 against psi_a for every a != 0, 1 (at most `max_twists` of them).
std::vector<InvarianceResult> check_psi_independence(const FieldPtr& field, int max_twists = 1);
/// Values for the field rebuilt with another generator g' = g^u, characters
/// relabelled j -> j u^{-1}.
std::vector<InvarianceResult> check_generator_independence(const FieldPtr& field, int generator_rank = 1);

/// Random scalar evaluations compared between the exact and float backends.
struct CrossCheckResult {
  std::uint64_t compared = 0;
  std::uint64_t mismatches = 0;
  double max_rel_error = 0;
};
CrossCheckResult cross_backend_check(const FieldPtr& field, std::uint64_t count, std::uint64_t seed);

}  // namespace ffhyper
