#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srptlab/analysis.hpp"
#include "srptlab/json_io.hpp"
#include "srptlab/oracle.hpp"
#include "srptlab/workload.hpp"

namespace srptlab {

// ---------------------------------------------------------------------------
// Verification of one instance against a set of reference schedules.

struct VerifyRequest {
    Instance instance;
    SpeedConfig speed;
    std::vector<unsigned> ks{1};
    std::vector<std::string> references{"oracle", "unit-srpt"};
    bool keep_passing_records = false;
    // Test hook: drops the last unit of work from one job in every reference trace.
    bool corrupt_reference = false;
    OracleLimits limits;
};

// One summary row per (reference, check group).
struct VerifyRow {
    std::string reference;
    std::string check;  // status | avg | lk | charge | feasibility
    std::string ks;
    bool pass = true;
    std::optional<Rational> worst_slack;
};

struct VerifyOutcome {
    std::vector<VerifyRow> rows;
    std::vector<PotentialReport> reports;
    std::vector<std::string> notices;

    bool pass() const;
};

// Throws DomainError when epsilon <= 0, or when some k >= 2 is requested with epsilon > 1/2.
// With only k = 1 and epsilon > 1/2 the k-th power checks are skipped with a notice.
VerifyOutcome run_verification(const VerifyRequest& request);

// Every k-th power and charge check for one pair; all four check groups.
std::vector<PotentialReport> verify_pair(const PairContext& ctx, bool include_power_checks, const CheckOptions& opts);

Json to_json(const VerifyOutcome& outcome);
std::string verify_csv(const VerifyOutcome& outcome, const std::string& instance_label);

// ---------------------------------------------------------------------------
// Competitive-ratio sweeps.

enum class SweepMode { Theorem, OneCompetitive };

struct SweepManifest {
    std::vector<Family> families;
    std::uint64_t seed_start = 0;
    std::uint64_t seed_count = 0;
    IntRange n_range{6, 6};
    IntRange size_range{1, 5};
    IntRange release_range{0, 10};
    std::vector<Rational> eps;
    std::vector<int> machines;
    std::vector<unsigned> ks{1};
    SweepMode mode = SweepMode::Theorem;
    OracleLimits limits;
};

// Accepts {} (empty sweep). See README for the keys.
SweepManifest manifest_from_json(const Json& j);

struct RatioReport {
    Family family = Family::Uniform;
    std::uint64_t seed = 0;
    int machines = 1;
    Rational eps;
    unsigned k = 1;
    Rational srpt_objective;
    Rational oracle_objective;
    Rational bound;
    bool within_bound = true;

    std::string ratio_decimal() const;
    std::string bound_decimal() const;
};

struct SweepResult {
    std::vector<RatioReport> rows;  // sorted by (family, seed, m, eps, k)
    std::vector<std::string> notices;

    bool all_within_bound() const;
};

// Cells run on up to `threads` workers; output does not depend on the thread count.
SweepResult run_sweep(const SweepManifest& manifest, unsigned threads = 1);

inline constexpr const char* kSweepCsvHeader = "family,seed,m,eps,k,srpt_obj,oracle_obj,ratio,bound,within_bound";
std::string sweep_csv(const SweepResult& result);
Json to_json(const SweepResult& result);
// Human-readable maxima per (m, eps, k).
std::string sweep_summary(const SweepResult& result);

// SRPTLAB_THREADS if set and positive, otherwise the hardware concurrency.
unsigned worker_count();

}  // namespace srptlab
