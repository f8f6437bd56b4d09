#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ffhyper/verifier.hpp"

namespace ffhyper {

struct RunConfig {
  std::vector<std::pair<int, int>> fields;  // (p, r)
  std::vector<std::string> identities;      // expanded; empty with all = false is an error
  bool all = false;
  Mode mode = Mode::Exhaustive;
  std::uint64_t samples = 200;
  std::uint64_t seed = 0;
  BackendKind backend = BackendKind::Exact;
  int max_arity = 3;
  std::uint64_t budget = 10'000'000;
  bool json = false;
  std::optional<std::string> out_path;
  bool timings = false;
  std::string inject_fault;
  unsigned threads = 0;
  std::size_t max_witnesses = 10;
  bool list = false;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Malformed command line; carries the message and usage text.
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& msg, std::string usage) : std::runtime_error(msg), usage_(std::move(usage)) {}
  const std::string& usage() const { return usage_; }

 private:
  std::string usage_;
};

/// --help was given; what() is the help text.
class HelpRequested : public std::runtime_error {
 public:
  explicit HelpRequested(const std::string& help) : std::runtime_error(help) {}
};

/// Throws UsageError or HelpRequested. args excludes the program name.
RunConfig parse_args(const std::vector<std::string>& args);
RunConfig parse_args(int argc, const char* const* argv);

/// Flags that reproduce `c` through parse_args.
std::vector<std::string> config_flags(const RunConfig& c);

std::vector<FieldPtr> build_fields(const RunConfig& c);
RunOptions run_options(const RunConfig& c);

std::string emit_json(const SuiteReport& s, const RunConfig& c);
std::string emit_text(const SuiteReport& s, const RunConfig& c);

/// Whole command: parse, run, write. Returns the process exit code
/// (0 pass, 1 identity failure or error report, 2 usage).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffhyper
