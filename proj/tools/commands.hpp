#pragma once

// Command implementations behind the addbasis executable. Each command fills
// an Outcome (exit code, results, bound ratios, timings); main.cpp only parses
// arguments and assembles the report, so everything here is testable in-process.

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "addbasis/addbasis.hpp"
#include "addbasis/io.hpp"

namespace addbasis::cli {

using nlohmann::json;

enum ExitCode : int {
  kOk = 0,
  kFalse = 1,
  kInputError = 2,
  kGuardError = 3,
  kBudgetExhausted = 4,
};

/// Configuration rejected before any work starts (empty range, grid too large, ...).
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Upper limit on k-multisets enumerated to build a coverage target set.
inline constexpr std::uint64_t kMaxEnumeratedSums = 5'000'000;

struct Outcome {
  int exit_code = kOk;
  json results = json::object();
  json bound_ratios = json::array();
  json timings = json::object();
  std::string csv;
  std::vector<std::string> inputs;  ///< raw input file contents, in reading order
};

class PhaseTimer {
 public:
  explicit PhaseTimer(json& sink, std::string name)
      : sink_(sink), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
  PhaseTimer(const PhaseTimer&) = delete;
  PhaseTimer& operator=(const PhaseTimer&) = delete;
  ~PhaseTimer() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    sink_[name_] = std::chrono::duration<double, std::milli>(elapsed).count();
  }

 private:
  json& sink_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Input handling

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Parses a JSON document; a full report from an earlier run is unwrapped to its results.
inline json parse_document(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("'" + origin + "' is not valid JSON");
  if (j.is_object() && j.contains("results") && j.contains("version")) return j.at("results");
  return j;
}

inline json load_input(Outcome& out, const std::string& path) {
  out.inputs.push_back(read_file(path));
  return parse_document(out.inputs.back(), path);
}

inline const std::initializer_list<const char*> kBasisKeys = {"B", "basis", "C"};
inline const std::initializer_list<const char*> kTargetKeys = {"A", "targets"};

inline std::string sha256_hex(const std::vector<std::string>& chunks) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error("cannot allocate digest context");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  for (const auto& chunk : chunks) {
    // Length prefix keeps ("ab","c") and ("a","bc") apart.
    const std::uint64_t length = chunk.size();
    EVP_DigestUpdate(ctx, &length, sizeof length);
    EVP_DigestUpdate(ctx, chunk.data(), chunk.size());
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  EVP_DigestFinal_ex(ctx, digest, &size);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < size; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return "sha256:" + hex.str();
}

/// "4,8,16", "2..5" or a mix such as "2..4,8".
inline std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  auto to_size = [&](const std::string& s) -> std::size_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("not a non-negative integer: '" + s + "' in '" + text + "'");
    return static_cast<std::size_t>(std::stoull(s));
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_size(item));
      continue;
    }
    const std::size_t lo = to_size(item.substr(0, dots));
    const std::size_t hi = to_size(item.substr(dots + 2));
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructions with coverage checks

enum class Construction { Round, Dyadic, Higher, Natural };

inline std::string to_string(Construction c) {
  switch (c) {
    case Construction::Round: return "round";
    case Construction::Dyadic: return "dyadic";
    case Construction::Higher: return "higher";
    case Construction::Natural: return "natural";
  }
  return "?";
}

inline Construction parse_construction(const std::string& s) {
  if (s == "round") return Construction::Round;
  if (s == "dyadic") return Construction::Dyadic;
  if (s == "higher") return Construction::Higher;
  if (s == "natural") return Construction::Natural;
  throw ParseError("unknown construction '" + s + "'");
}

inline ElementSet magnitudes(const ElementSet& s) {
  std::vector<Rational> out;
  for (const auto& x : s) out.push_back(abs(x));
  return ElementSet(std::move(out));
}

inline std::uint64_t multiset_count(std::size_t n, std::size_t k) {
  Integer c = 1;
  for (std::size_t i = 0; i < k; ++i) c = c * (n + i) / (i + 1);
  return c > kMaxEnumeratedSums ? kMaxEnumeratedSums + 1 : static_cast<std::uint64_t>(c);
}

struct ConstructionRun {
  Construction method = Construction::Round;
  std::size_t k = 2;
  std::size_t n = 0;  ///< the n of the size bound
  ElementSet basis;
  std::optional<CoverageReport> coverage;  ///< absent when verification was skipped
  std::size_t target_count = 0;
  double bound = 0;
  bool within_bound = true;
  std::vector<HigherOrderStage> stages;
};

/// The set each construction promises to cover, materialized from B.
inline ElementSet promised_targets(Construction method, const ElementSet& basis, std::size_t k) {
  auto guard = [&](std::size_t n) {
    if (multiset_count(n, k) > kMaxEnumeratedSums)
      throw GuardError("coverage check would enumerate more than " + std::to_string(kMaxEnumeratedSums) +
                       " sums; pass --skip-verify");
  };
  switch (method) {
    case Construction::Round: {
      guard(basis.size());
      std::vector<Rational> ints;
      for (const auto& t : k_fold_sumset(basis, k))
        if (t.is_integer()) ints.push_back(t);
      return ElementSet::from_sorted_unique(std::move(ints));
    }
    case Construction::Dyadic:
      guard(basis.size());
      return k_fold_sumset(basis, 2).non_negative_part();
    case Construction::Higher: {
      const ElementSet closed = signed_closure(basis);
      guard(closed.size());
      return k_fold_sumset(closed, k).non_negative_part();
    }
    case Construction::Natural:
      break;
  }
  throw InvalidInput("natural construction takes explicit targets");
}

inline ConstructionRun run_construction(Construction method, const ElementSet& basis, std::size_t k,
                                        const std::optional<ElementSet>& targets, bool verify) {
  if (basis.empty()) throw InvalidInput("basis must be nonempty");
  ConstructionRun run;
  run.method = method;
  run.k = k;
  switch (method) {
    case Construction::Round:
      if (k < 1) throw InvalidParameter("k must be at least 1");
      run.basis = round_to_integer_basis(basis);
      run.n = basis.size();
      run.bound = static_cast<double>(bounds::rounding_bound(run.n));
      run.within_bound = run.basis.size() <= bounds::rounding_bound(run.n);
      break;
    case Construction::Dyadic:
      if (k != 2) throw InvalidParameter("the dyadic construction is a 2-basis; use --k 2");
      run.basis = dyadic_two_basis(basis);
      run.n = magnitudes(basis).size();
      run.bound = bounds::dyadic_bound(run.n);
      run.within_bound = run.n >= 2 ? bounds::within_dyadic_bound(run.basis.size(), run.n)
                                    : run.basis.size() <= bounds::dyadic_level_count_bound(run.n);
      break;
    case Construction::Higher: {
      const ElementSet mags = magnitudes(basis);
      auto traced = higher_order_nonneg_basis_traced(mags, k);
      run.basis = std::move(traced.basis);
      run.stages = std::move(traced.stages);
      run.n = mags.size();
      run.bound = bounds::higher_order_bound(run.n, k);
      run.within_bound = bounds::within_higher_order_bound(run.basis.size(), run.n, k);
      break;
    }
    case Construction::Natural: {
      if (!targets) throw InvalidInput("the natural construction needs a target set");
      run.basis = natural_k_basis(*targets, basis, k);
      run.n = basis.size();
      run.bound = bounds::natural_basis_bound(run.n, k);
      run.within_bound = static_cast<double>(run.basis.size()) <= run.bound;
      break;
    }
  }
  if (verify) {
    const ElementSet goal = method == Construction::Natural ? *targets : promised_targets(method, basis, k);
    run.target_count = goal.size();
    run.coverage = is_k_basis(run.basis, goal, k);
  }
  return run;
}

inline json construction_results(const ConstructionRun& run, const ElementSet& input, bool emit_certificates) {
  json r = {{"construction", to_string(run.method)},
            {"k", run.k},
            {"n", run.n},
            {"input_size", input.size()},
            {"size", run.basis.size()},
            {"basis", io::to_json(run.basis)}};
  if (run.coverage) {
    r["covered"] = run.coverage->covered;
    r["targets_checked"] = run.target_count;
    json failures = json::array();
    for (const auto& f : run.coverage->failures()) failures.push_back(io::to_json(f));
    r["failures"] = failures;
    if (emit_certificates) {
      json certs = json::array();
      for (const auto& [target, cert] : run.coverage->certificates)
        if (cert) certs.push_back(io::to_json(*cert));
      r["certificates"] = certs;
    }
  } else {
    r["covered"] = nullptr;
  }
  if (!run.stages.empty()) {
    json stages = json::array();
    for (const auto& s : run.stages) {
      stages.push_back({{"points", s.points},
                        {"near_top", s.near_top},
                        {"step", io::to_json(s.step)},
                        {"scale", io::to_json(s.scale)},
                        {"cover_size", s.cover_size}});
    }
    r["stages"] = stages;
  }
  return r;
}

inline json bound_ratio_entry(const ConstructionRun& run) {
  return {{"construction", to_string(run.method)},
          {"n", run.n},
          {"k", run.k},
          {"size", run.basis.size()},
          {"bound", run.bound},
          {"ratio", run.bound > 0 ? static_cast<double>(run.basis.size()) / run.bound : 0.0},
          {"within_bound", run.within_bound}};
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
  std::string input;
  unsigned window_multiplier = 2;
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::optional<std::string> scale;
};

inline Outcome cmd_solve(const SolveOptions& opt) {
  Outcome out;
  const BasisInstance instance = io::instance_from_json(load_input(out, opt.input));
  GroundOptions ground_options;
  ground_options.window_multiplier = opt.window_multiplier;
  if (opt.scale) {
    const Rational s = Rational::parse(*opt.scale);
    if (!s.is_integer() || s.sign() <= 0) throw InvalidParameter("--scale must be a positive integer");
    ground_options.scale = s.numerator();
  }
  GroundSet ground;
  {
    PhaseTimer t(out.timings, "ground_ms");
    ground = default_ground_set(instance, ground_options);
  }
  const json ground_info = {{"size", ground.elements.size()}, {"exactness", to_string(ground.exactness)}};
  try {
    PhaseTimer t(out.timings, "search_ms");
    const SolveResult result = min_basis(instance, ground, opt.node_budget);
    out.results = io::to_json(result);
    out.results["ground"] = ground_info;
  } catch (const ResourceLimit& e) {
    out.exit_code = kBudgetExhausted;
    out.results = {{"status", "budget-exhausted"},
                   {"message", e.what()},
                   {"best_upper_bound", e.best_upper_bound()},
                   {"proven_lower_bound", e.proven_lower_bound()},
                   {"ground", ground_info}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// construct

struct ConstructOptions {
  std::string method;
  std::string input;
  std::size_t k = 2;
  std::optional<std::string> targets;
  bool emit_certificates = false;
  bool skip_verify = false;
};

inline Outcome cmd_construct(const ConstructOptions& opt) {
  Outcome out;
  const Construction method = parse_construction(opt.method);
  const json doc = load_input(out, opt.input);
  const ElementSet basis = io::element_set_from_document(doc, kBasisKeys);
  std::optional<ElementSet> targets;
  if (opt.targets) {
    targets = io::element_set_from_document(load_input(out, *opt.targets), kTargetKeys);
  } else if (method == Construction::Natural && doc.is_object() && doc.contains("A")) {
    targets = io::element_set_from_json(doc.at("A"));
  }
  ConstructionRun run;
  {
    PhaseTimer t(out.timings, "construct_ms");
    run = run_construction(method, basis, opt.k, targets, false);
  }
  if (!opt.skip_verify) {
    PhaseTimer t(out.timings, "verify_ms");
    const ElementSet goal = method == Construction::Natural ? *targets : promised_targets(method, basis, opt.k);
    run.target_count = goal.size();
    run.coverage = is_k_basis(run.basis, goal, opt.k);
  }
  out.results = construction_results(run, basis, opt.emit_certificates);
  out.bound_ratios.push_back(bound_ratio_entry(run));
  if (run.coverage && !run.coverage->covered) out.exit_code = kFalse;
  return out;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string basis;
  std::string targets;
  std::size_t k = 2;
  bool emit_certificates = false;
};

inline Outcome cmd_verify(const VerifyOptions& opt) {
  Outcome out;
  const ElementSet basis = io::element_set_from_document(load_input(out, opt.basis), kBasisKeys);
  const ElementSet targets = io::element_set_from_document(load_input(out, opt.targets), kTargetKeys);
  if (opt.k < 1) throw InvalidParameter("k must be at least 1");
  CoverageReport report;
  {
    PhaseTimer t(out.timings, "verify_ms");
    report = is_k_basis(basis, targets, opt.k);
  }
  json failures = json::array();
  for (const auto& f : report.failures()) failures.push_back(io::to_json(f));
  out.results = {{"covered", report.covered},
                 {"k", opt.k},
                 {"basis_size", basis.size()},
                 {"target_count", targets.size()},
                 {"failures", failures}};
  if (opt.emit_certificates) {
    json certs = json::array();
    for (const auto& [target, cert] : report.certificates)
      if (cert) certs.push_back(io::to_json(*cert));
    out.results["certificates"] = certs;
  }
  out.exit_code = report.covered ? kOk : kFalse;
  return out;
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  std::string family;
  std::size_t n = 1;
  std::size_t k = 2;
  std::uint64_t base = 4;
  std::uint64_t denominator_bound = 1;
  std::optional<std::uint64_t> magnitude_bound;
  std::uint64_t seed = 0;
  bool non_negative = false;
};

inline Outcome cmd_gen(const GenOptions& opt) {
  Outcome out;
  if (opt.n < 1) throw InvalidParameter("--n must be at least 1");
  PhaseTimer t(out.timings, "generate_ms");
  if (opt.family == "power-family") {
    const PowerFamily f = gen_power_family(opt.n, opt.base);
    out.results = {{"family", "power-family"}, {"n", opt.n},         {"base", opt.base}, {"k", 2},
                   {"domain", "N"},            {"A", io::to_json(f.targets)}, {"C", io::to_json(f.witness)}};
  } else if (opt.family == "random-basis") {
    const auto g = gen_random_rational_basis(opt.n, opt.denominator_bound, opt.magnitude_bound.value_or(1),
                                             opt.seed, opt.non_negative);
    out.results = {{"family", "random-basis"},
                   {"n", opt.n},
                   {"k", opt.k},
                   {"seed", opt.seed},
                   {"denominator_bound", g.spec.denominator_bound},
                   {"magnitude_bound", g.spec.magnitude_bound},
                   {"non_negative", opt.non_negative},
                   {"B", io::to_json(g.values)}};
  } else if (opt.family == "signed-basis") {
    const auto g = gen_random_signed_integer_basis(opt.n, opt.magnitude_bound.value_or(8 * opt.n), opt.seed);
    out.results = {{"family", "signed-basis"},
                   {"n", opt.n},
                   {"k", 2},
                   {"seed", opt.seed},
                   {"magnitude_bound", g.spec.magnitude_bound},
                   {"domain", "N"},
                   {"B", io::to_json(g.values)},
                   {"A", io::to_json(k_fold_sumset(g.values, 2).non_negative_part())}};
  } else {
    throw ParseError("unknown family '" + opt.family + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// probe

inline Outcome cmd_probe_vector_cover(const std::string& input) {
  Outcome out;
  const VectorFamily family = io::vector_family_from_json(load_input(out, input));
  VectorCoverReport report;
  {
    PhaseTimer t(out.timings, "verify_ms");
    report = check_vector_cover(family);
  }
  json targets = json::array();
  for (const auto& [target, witness] : report.witnesses) {
    json entry = {{"target", io::to_json(target)}};
    if (witness) {
      json summands = json::array();
      for (const auto& v : witness->summands) summands.push_back(io::to_json(v));
      entry["witness"] = {{"parts", witness->part_indices}, {"summands", summands}, {"delta", witness->delta}};
    } else {
      entry["witness"] = nullptr;
    }
    targets.push_back(entry);
  }
  out.results = {{"covered", report.covered},
                 {"n", family.dimension},
                 {"k", family.order},
                 {"total_size", family.total_size()},
                 {"targets", targets}};
  out.exit_code = report.covered ? kOk : kFalse;
  return out;
}

struct TwoSetProbeOptions {
  std::size_t n = 2;
  std::string sizes = "2,2";
  std::int64_t coordinate_bound = 2;
  std::int64_t denominator_bound = 2;
  std::uint64_t budget = 20'000'000;
  std::uint64_t seed = 1;
};

inline Outcome cmd_probe_two_set(const TwoSetProbeOptions& opt) {
  Outcome out;
  const auto sizes = parse_size_list(opt.sizes);
  if (sizes.size() != 2) throw ParseError("--sizes expects two values s0,s1");
  TwoSetCoverOptions options;
  options.grid = GridSpec{opt.coordinate_bound, opt.denominator_bound};
  options.budget = opt.budget;
  options.seed = opt.seed;
  TwoSetCoverReport report;
  {
    PhaseTimer t(out.timings, "search_ms");
    report = two_set_cover_probe(opt.n, sizes[0], sizes[1], options);
  }
  out.results = {{"n", report.dimension},
                 {"sizes", {report.size0, report.size1}},
                 {"grid", {{"coordinate_bound", report.grid.coordinate_bound},
                           {"denominator_bound", report.grid.denominator_bound},
                           {"values", report.grid_values}}},
                 {"found", report.family.has_value()},
                 {"exhaustive", report.exhaustive},
                 {"budget_exhausted", report.budget_exhausted},
                 {"anchor_sets_examined", report.anchors_examined},
                 {"nodes", report.nodes}};
  out.results["family"] = report.family ? io::to_json(*report.family) : json(nullptr);
  if (report.family) {
    out.exit_code = kOk;
  } else {
    out.exit_code = report.exhaustive ? kFalse : kBudgetExhausted;
  }
  return out;
}

inline Outcome cmd_probe_parity() {
  Outcome out;
  constexpr std::int64_t kBox = 4;
  bool holds = false;
  json witnesses = json::array();
  {
    PhaseTimer t(out.timings, "check_ms");
    holds = parity_union_counterexample_check();
    // First c in the box (row-major) where each single system has no integer solution.
    for (std::size_t s = 0; s < 3; ++s) {
      json entry = {{"system", s + 1}, {"unsolvable_at", nullptr}};
      for (std::int64_t c1 = -kBox; c1 <= kBox && entry["unsolvable_at"].is_null(); ++c1)
        for (std::int64_t c2 = -kBox; c2 <= kBox && entry["unsolvable_at"].is_null(); ++c2)
          if (!parity_system_solvable(s, c1, c2)) entry["unsolvable_at"] = {c1, c2};
      witnesses.push_back(entry);
    }
  }
  out.results = {{"holds", holds}, {"box", kBox}, {"single_systems", witnesses}};
  out.exit_code = holds ? kOk : kFalse;
  return out;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::string family = "signed-basis";
  std::string construction = "dyadic";
  std::string n_values = "4,8,16";
  std::string k_values = "2";
  std::size_t seeds = 1;
  std::uint64_t seed = 0;
  std::uint64_t denominator_bound = 8;
  std::optional<std::uint64_t> magnitude_bound;
  std::uint64_t base = 4;
  std::size_t max_cells = 256;
  std::size_t threads = 1;
};

struct SweepCell {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

struct SweepRow {
  SweepCell cell;
  std::size_t size = 0;
  double bound = 0;
  std::optional<bool> covered;
  bool within_bound = true;
  double millis = 0;
};

inline SweepRow run_sweep_cell(const SweepOptions& opt, Construction method, const SweepCell& cell) {
  const auto start = std::chrono::steady_clock::now();
  ElementSet basis;
  std::optional<ElementSet> targets;
  if (opt.family == "power-family") {
    const PowerFamily f = gen_power_family(cell.n, opt.base);
    basis = f.witness;
    targets = f.targets;
  } else if (opt.family == "random-basis") {
    basis = gen_random_rational_basis(cell.n, opt.denominator_bound, opt.magnitude_bound.value_or(4), cell.seed,
                                      method == Construction::Higher)
                .values;
  } else {
    basis = gen_random_signed_integer_basis(cell.n, opt.magnitude_bound.value_or(8 * cell.n), cell.seed).values;
  }
  if (method == Construction::Natural) {
    if (multiset_count(basis.size(), cell.k) > kMaxEnumeratedSums) throw GuardError("grid point too large to verify");
    targets = k_fold_sumset(basis, cell.k).non_negative_part();
  }
  const ConstructionRun run = run_construction(method, basis, cell.k, targets, true);
  SweepRow row;
  row.cell = cell;
  row.size = run.basis.size();
  row.bound = run.bound;
  row.covered = run.coverage ? std::optional<bool>(run.coverage->covered) : std::nullopt;
  row.within_bound = run.within_bound;
  row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

inline Outcome cmd_sweep(const SweepOptions& opt) {
  Outcome out;
  const Construction method = parse_construction(opt.construction);
  if (opt.family != "power-family" && opt.family != "random-basis" && opt.family != "signed-basis")
    throw GuardError("unknown family '" + opt.family + "'");
  const auto ns = parse_size_list(opt.n_values);
  const auto ks = parse_size_list(opt.k_values);
  if (ns.empty() || ks.empty() || opt.seeds == 0) throw GuardError("empty sweep range");
  const std::size_t cells = ns.size() * ks.size() * opt.seeds;
  if (cells > opt.max_cells)
    throw GuardError("sweep has " + std::to_string(cells) + " grid points, above the cap of " +
                     std::to_string(opt.max_cells));
  if (method == Construction::Dyadic && std::any_of(ks.begin(), ks.end(), [](std::size_t k) { return k != 2; }))
    throw GuardError("the dyadic construction only supports k = 2");
  if ((method == Construction::Dyadic || method == Construction::Natural) && opt.family == "random-basis" &&
      opt.denominator_bound != 1)
    throw GuardError("this construction needs integer bases; use --denom 1 or an integer family");
  for (auto n : ns)
    if (n < 1) throw GuardError("n must be at least 1");
  for (auto k : ks)
    if (k < 1 || (k < 2 && method != Construction::Round)) throw GuardError("k out of range for this construction");

  std::vector<SweepCell> grid;
  for (auto n : ns)
    for (auto k : ks)
      for (std::size_t r = 0; r < opt.seeds; ++r) grid.push_back({n, k, opt.seed + r});

  std::vector<std::optional<SweepRow>> rows(grid.size());
  std::vector<std::string> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = run_sweep_cell(opt, method, grid[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  {
    PhaseTimer t(out.timings, "total_ms");
    const std::size_t threads = std::clamp<std::size_t>(opt.threads, 1, grid.size());
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!errors[i].empty())
      throw ConstructionFailure("grid point n=" + std::to_string(grid[i].n) + " k=" + std::to_string(grid[i].k) +
                                " seed=" + std::to_string(grid[i].seed) + ": " + errors[i]);

  std::ostringstream csv;
  csv << "family,n,k,construction,size,paper_bound,ratio,covered,millis\n";
  json result_rows = json::array();
  json millis = json::array();
  bool all_covered = true;
  for (const auto& row : rows) {
    const double ratio = row->bound > 0 ? static_cast<double>(row->size) / row->bound : 0.0;
    const std::string covered = row->covered ? (*row->covered ? "true" : "false") : "";
    if (row->covered && !*row->covered) all_covered = false;
    csv << opt.family << ',' << row->cell.n << ',' << row->cell.k << ',' << to_string(method) << ',' << row->size
        << ',' << std::setprecision(10) << row->bound << ',' << std::setprecision(6) << ratio << ',' << covered
        << ',' << std::fixed << std::setprecision(3) << row->millis << std::defaultfloat << '\n';
    json entry = {{"family", opt.family},
                  {"n", row->cell.n},
                  {"k", row->cell.k},
                  {"seed", row->cell.seed},
                  {"construction", to_string(method)},
                  {"size", row->size},
                  {"paper_bound", row->bound},
                  {"ratio", ratio},
                  {"within_bound", row->within_bound}};
    entry["covered"] = row->covered ? json(*row->covered) : json(nullptr);
    result_rows.push_back(entry);
    out.bound_ratios.push_back({{"n", row->cell.n},
                                {"k", row->cell.k},
                                {"seed", row->cell.seed},
                                {"size", row->size},
                                {"bound", row->bound},
                                {"ratio", ratio}});
    millis.push_back(row->millis);
  }
  out.timings["cell_ms"] = millis;
  out.results = {{"family", opt.family}, {"construction", to_string(method)}, {"rows", result_rows},
                 {"all_covered", all_covered}};
  out.csv = csv.str();
  out.exit_code = all_covered ? kOk : kFalse;
  return out;
}

// ---------------------------------------------------------------------------
// Report assembly

inline json make_report(const std::string& command, const Outcome& outcome) {
  return {{"command", command},
          {"input_digest", sha256_hex(outcome.inputs)},
          {"results", outcome.results},
          {"timings", outcome.timings},
          {"bound_ratios", outcome.bound_ratios},
          {"version", std::string("addbasis ") + kVersion}};
}

}  // namespace addbasis::cli
