#include "ffhyper/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "ffhyper/report_json.hpp"

namespace ffhyper {
namespace {

struct Raw {
  std::vector<int> p, r;
  std::string q_list;
  std::vector<std::string> identity;
  bool all = false;
  std::string mode = "exhaustive";
  std::uint64_t samples = 200;
  std::uint64_t seed = 0;
  std::string backend = "exact";
  int max_arity = 3;
  std::uint64_t budget = 10'000'000;
  bool json = false;
  std::string out;
  std::string config;
  bool timings = false;
  std::string inject_fault;
  unsigned threads = 0;
  std::size_t max_witnesses = 10;
  bool list = false;
  std::set<std::string> given;
};

void setup(CLI::App& app, Raw& raw) {
  app.add_option("--p", raw.p, "field characteristic (repeatable, paired with --r)");
  app.add_option("--r", raw.r, "extension degree (repeatable, paired with --p)");
  app.add_option("--q-list", raw.q_list, "comma-separated prime powers, e.g. 3,4,5");
  app.add_option("--identity", raw.identity, "identity id (repeatable)");
  app.add_flag("--all", raw.all, "every registered identity");
  app.add_option("--mode", raw.mode, "exhaustive or sample")->check(CLI::IsMember({"exhaustive", "sample"}));
  app.add_option("--samples", raw.samples, "draws per identity and field in sample mode")->check(CLI::PositiveNumber);
  app.add_option("--seed", raw.seed, "64-bit sampling seed");
  app.add_option("--backend", raw.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--max-arity", raw.max_arity, "skip variants needing more Lauricella variables")
      ->check(CLI::Range(0, 8));
  app.add_option("--budget", raw.budget, "largest exhaustive sweep accepted, in tuples");
  app.add_flag("--json", raw.json, "machine-readable output");
  app.add_option("--out", raw.out, "write output to FILE");
  app.add_option("--config", raw.config, "key=value file; flags override it");
  app.add_flag("--timings", raw.timings, "record durations (makes output nondeterministic)");
  app.add_option("--threads", raw.threads, "worker threads, 0 for all cores");
  app.add_option("--max-witnesses", raw.max_witnesses, "failures recorded per report");
  app.add_flag("--list", raw.list, "list identities and exit");
  app.add_option("--inject-fault", raw.inject_fault)->group("");
}

Raw parse_raw(std::vector<std::string> args, const std::string& origin) {
  CLI::App app{"Verify character-sum identities for hypergeometric functions over finite fields", "ffhyper"};
  Raw raw;
  setup(app, raw);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(origin + e.what(), app.help());
  }
  for (const auto* opt : app.get_options())
    if (opt->count() > 0) raw.given.insert(opt->get_name());
  return raw;
}

std::string usage_text() {
  CLI::App app{"Verify character-sum identities for hypergeometric functions over finite fields", "ffhyper"};
  Raw raw;
  setup(app, raw);
  return app.help();
}

std::vector<std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'", usage_text());
  std::vector<std::string> args;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value", usage_text());
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "config") throw UsageError(path + ": nested config files are not supported", usage_text());
    const bool flag = key == "all" || key == "json" || key == "timings" || key == "list";
    if (flag) {
      if (value == "true" || value == "1") args.push_back("--" + key);
      else if (value != "false" && value != "0")
        throw UsageError(path + ":" + std::to_string(lineno) + ": '" + key + "' takes true or false", usage_text());
      continue;
    }
    // Comma-separated lists for the repeatable keys.
    if (key == "p" || key == "r" || key == "identity") {
      std::stringstream ss(value);
      for (std::string item; std::getline(ss, item, ',');) {
        args.push_back("--" + key);
        args.push_back(trim(item));
      }
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

std::vector<int> split_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--q-list: '" + item + "' is not an integer", usage_text());
    }
    if (used != item.size()) throw UsageError("--q-list: '" + item + "' is not an integer", usage_text());
    out.push_back(v);
  }
  return out;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  Raw cli = parse_raw(args, "");
  Raw raw = cli;
  if (!cli.config.empty()) {
    Raw file = parse_raw(read_config_file(cli.config), cli.config + ": ");
    raw = file;
    raw.given = cli.given;
    raw.config = cli.config;
    // Command-line flags win; a list given on the command line replaces the file's list.
    auto take = [&](const char* name, auto Raw::*field) {
      if (cli.given.count(name)) raw.*field = cli.*field;
    };
    take("--p", &Raw::p);
    take("--r", &Raw::r);
    take("--q-list", &Raw::q_list);
    take("--identity", &Raw::identity);
    take("--all", &Raw::all);
    take("--mode", &Raw::mode);
    take("--samples", &Raw::samples);
    take("--seed", &Raw::seed);
    take("--backend", &Raw::backend);
    take("--max-arity", &Raw::max_arity);
    take("--budget", &Raw::budget);
    take("--json", &Raw::json);
    take("--out", &Raw::out);
    take("--timings", &Raw::timings);
    take("--threads", &Raw::threads);
    take("--max-witnesses", &Raw::max_witnesses);
    take("--list", &Raw::list);
    take("--inject-fault", &Raw::inject_fault);
  }

  RunConfig c;
  if (raw.p.size() != raw.r.size()) throw UsageError("--p and --r must be given in pairs", usage_text());
  auto add_field = [&](int p, int r) {
    if (!is_prime(p) || r < 1) throw UsageError("invalid field p=" + std::to_string(p) + " r=" + std::to_string(r),
                                                usage_text());
    long q = 1;
    for (int i = 0; i < r && q <= 64; ++i) q *= p;
    if (q > 64) throw UsageError("field size " + std::to_string(p) + "^" + std::to_string(r) + " exceeds 64",
                                 usage_text());
    const std::pair<int, int> f{p, r};
    if (std::find(c.fields.begin(), c.fields.end(), f) == c.fields.end()) c.fields.push_back(f);
  };
  for (std::size_t i = 0; i < raw.p.size(); ++i) add_field(raw.p[i], raw.r[i]);
  if (!raw.q_list.empty()) {
    for (int q : split_ints(raw.q_list)) {
      int p = 0, r = 0;
      try {
        std::tie(p, r) = prime_power(q);
      } catch (const std::exception&) {
        throw UsageError("--q-list: " + std::to_string(q) + " is not a prime power", usage_text());
      }
      add_field(p, r);
    }
  }
  c.all = raw.all;
  c.list = raw.list;
  if (c.all) {
    for (const auto& s : registry()) c.identities.push_back(s.id);
  } else {
    for (const auto& id : raw.identity) {
      if (!find_identity(id)) throw UsageError("unknown identity '" + id + "' (see --list)", usage_text());
      if (std::find(c.identities.begin(), c.identities.end(), id) == c.identities.end()) c.identities.push_back(id);
    }
  }
  if (!c.list) {
    if (c.fields.empty()) throw UsageError("no field given (use --p/--r or --q-list)", usage_text());
    if (c.identities.empty()) throw UsageError("no identity given (use --identity or --all)", usage_text());
  }
  c.mode = raw.mode == "sample" ? Mode::Sample : Mode::Exhaustive;
  c.samples = raw.samples;
  c.seed = raw.seed;
  c.backend = raw.backend == "float" ? BackendKind::Float : BackendKind::Exact;
  c.max_arity = raw.max_arity;
  c.budget = raw.budget;
  c.json = raw.json;
  if (!raw.out.empty()) c.out_path = raw.out;
  c.timings = raw.timings;
  c.inject_fault = raw.inject_fault;
  c.threads = raw.threads;
  c.max_witnesses = raw.max_witnesses;
  return c;
}

RunConfig parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_args(args);
}

std::vector<std::string> config_flags(const RunConfig& c) {
  std::vector<std::string> f;
  for (auto [p, r] : c.fields) {
    f.insert(f.end(), {"--p", std::to_string(p), "--r", std::to_string(r)});
  }
  if (c.all) {
    f.push_back("--all");
  } else {
    for (const auto& id : c.identities) f.insert(f.end(), {"--identity", id});
  }
  f.insert(f.end(), {"--mode", to_string(c.mode), "--samples", std::to_string(c.samples), "--seed",
                     std::to_string(c.seed), "--backend", to_string(c.backend), "--max-arity",
                     std::to_string(c.max_arity), "--budget", std::to_string(c.budget)});
  if (c.json) f.push_back("--json");
  if (c.out_path) f.insert(f.end(), {"--out", *c.out_path});
  if (c.timings) f.push_back("--timings");
  if (!c.inject_fault.empty()) f.insert(f.end(), {"--inject-fault", c.inject_fault});
  if (c.threads) f.insert(f.end(), {"--threads", std::to_string(c.threads)});
  if (c.max_witnesses != 10) f.insert(f.end(), {"--max-witnesses", std::to_string(c.max_witnesses)});
  if (c.list) f.push_back("--list");
  return f;
}

std::vector<FieldPtr> build_fields(const RunConfig& c) {
  std::vector<FieldPtr> out;
  for (auto [p, r] : c.fields) out.push_back(build_field(p, r));
  return out;
}

RunOptions run_options(const RunConfig& c) {
  RunOptions o;
  o.mode = c.mode;
  o.samples = c.samples;
  o.seed = c.seed;
  o.backend = c.backend;
  o.max_arity = c.max_arity;
  o.budget = c.budget;
  o.timings = c.timings;
  o.inject_fault = c.inject_fault;
  o.threads = c.threads;
  o.max_witnesses = c.max_witnesses;
  return o;
}

std::string emit_json(const SuiteReport& s, const RunConfig& c) {
  nlohmann::json fields = nlohmann::json::array();
  for (auto [p, r] : c.fields) fields.push_back({p, r});
  nlohmann::json config = {{"fields", fields},
                           {"identities", c.identities},
                           {"mode", to_string(c.mode)},
                           {"samples", c.samples},
                           {"seed", c.seed},
                           {"backend", to_string(c.backend)},
                           {"max_arity", c.max_arity},
                           {"budget", c.budget},
                           {"flags", config_flags(c)}};
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  nlohmann::json j = {{"version", 1},
                      {"config", config},
                      {"reports", reports},
                      {"totals",
                       {{"reports", s.reports.size()},
                        {"checked", s.checked},
                        {"skipped", s.skipped},
                        {"failures", s.failures},
                        {"errors", s.errors}}},
                      {"digest", s.digest}};
  return j.dump(2) + "\n";
}

std::string emit_text(const SuiteReport& s, const RunConfig&) {
  std::ostringstream os;
  for (const auto& r : s.reports) {
    std::string tag = to_string(r.status);
    for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << tag << " q=" << r.q << " " << r.id << " " << to_string(r.mode) << " checked=" << r.checked
       << " skipped=" << r.skipped;
    if (r.failure_count) os << " failures=" << r.failure_count;
    if (r.duration_ms) os << " ms=" << static_cast<long>(*r.duration_ms);
    if (!r.error.empty()) os << " error: " << r.error;
    os << "\n";
    for (const auto& w : r.failures) os << "    witness " << to_json(w).dump() << "\n";
  }
  os << s.reports.size() << " reports, " << s.checked << " checked, " << s.skipped << " skipped, " << s.failures
     << " failures, " << s.errors << " errors\n";
  os << "digest " << s.digest << "\n";
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    c = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << e.usage();
    return 2;
  }
  if (c.list) {
    for (const auto& s : registry()) out << s.id << (s.requires_odd_p ? " [odd p]" : "") << "  " << s.summary << "\n";
    return 0;
  }
  std::vector<FieldPtr> fields;
  try {
    fields = build_fields(c);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (c.mode == Mode::Exhaustive) {
    for (const auto& f : fields)
      for (const auto& id : c.identities) {
        const std::uint64_t n = exhaustive_size(*f, *find_identity(id), c.max_arity);
        if (n > c.budget) {
          err << "error: exhaustive sweep of " << id << " at q=" << f->q() << " needs " << n
              << " tuples, over the budget of " << c.budget << "; use --mode sample\n";
          return 2;
        }
      }
  }
  std::ofstream file;
  if (c.out_path) {
    file.open(*c.out_path);
    if (!file) {
      err << "error: cannot write '" << *c.out_path << "'\n";
      return 2;
    }
  }
  const SuiteReport s = run_suite(fields, c.identities, run_options(c));
  const std::string text = c.json ? emit_json(s, c) : emit_text(s, c);
  std::ostream& dst = c.out_path ? static_cast<std::ostream&>(file) : out;
  dst << text;
  dst.flush();
  if (!dst) {
    err << "error: write failed\n";
    return 2;
  }
  return s.ok() ? 0 : 1;
}

}  // namespace ffhyper
