#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srptlab/model.hpp"

namespace srptlab {

// Work left on `job` at time t: full size before release, 0 from completion on.
Rational remaining_at(const ExecutionTrace& trace, JobId job, const Rational& t);

// Accumulated k-th power flow at time t: sum over released jobs of (min(C_i, t) - r_i)^k.
Rational accumulated_power_flow(const ExecutionTrace& trace, unsigned k, const Rational& t);

// Exact per-job flows and k-th power flow for each k; l_k norms as 12-digit decimals.
FlowSummary objectives(const ExecutionTrace& trace, const std::vector<unsigned>& ks);

// Which side of the discontinuities at an event time a quantity is read on.
// Completions are applied before arrivals.
enum class Phase { BeforeEvents, AfterCompletions, AfterArrivals };

// An SRPT trace at speed 1+eps paired with a feasible unit-speed reference
// trace of the same instance. Both traces must be complete and validate cleanly.
class PairContext {
public:
    // Throws InputError if the traces disagree on the instance, the reference is
    // not unit speed, or either trace fails validate_trace.
    PairContext(ExecutionTrace srpt, ExecutionTrace reference, unsigned k = 1, std::string reference_name = "ref");

    const ExecutionTrace& srpt() const { return srpt_; }
    const ExecutionTrace& reference() const { return ref_; }
    const Instance& instance() const { return srpt_.instance; }
    const std::string& reference_name() const { return reference_name_; }
    Rational epsilon() const { return srpt_.speed.epsilon(); }
    unsigned k() const { return k_; }
    int machines() const { return srpt_.instance.machines; }

    Rational srpt_remaining(JobId id, const Rational& t) const { return remaining(srpt_profile_, srpt_, id, t); }
    Rational ref_remaining(JobId id, const Rational& t) const { return remaining(ref_profile_, ref_, id, t); }

    // Sorted distinct times where anything in either trace changes slope or jumps.
    const std::vector<Rational>& breakpoints() const { return breakpoints_; }

private:
    using Profile = std::vector<std::vector<std::pair<Rational, Rational>>>;
    static Profile build_profile(const ExecutionTrace& trace);
    static Rational remaining(const Profile& p, const ExecutionTrace& trace, JobId id, const Rational& t);

    ExecutionTrace srpt_;
    ExecutionTrace ref_;
    unsigned k_;
    std::string reference_name_;
    Profile srpt_profile_;
    Profile ref_profile_;
    std::vector<Rational> breakpoints_;
};

// Queue contents of both schedules at one instant, on one side of its events.
struct Snapshot {
    Rational time;
    Phase phase = Phase::AfterArrivals;
    std::vector<bool> in_srpt;  // alive in the SRPT schedule
    std::vector<bool> in_ref;   // alive in the reference schedule
    std::vector<Rational> srpt_remaining;
    std::vector<Rational> ref_remaining;
};

Snapshot take_snapshot(const PairContext& ctx, const Rational& t, Phase phase = Phase::AfterArrivals);

// Remaining SRPT work of alive jobs that SRPT completes no later than job i.
Rational srpt_volume_ahead(const PairContext& ctx, const Snapshot& snap, JobId i);
// Remaining reference work of alive jobs that SRPT completes no later than job i
// and whose original size is at most p_i.
Rational ref_volume_ahead(const PairContext& ctx, const Snapshot& snap, JobId i);
// srpt_volume_ahead restricted to jobs whose remaining work is at most p_i.
Rational capped_volume_ahead(const PairContext& ctx, const Snapshot& snap, JobId i);

// Convenience forms read after all events at t.
Rational srpt_volume_ahead(const PairContext& ctx, JobId i, const Rational& t);
Rational ref_volume_ahead(const PairContext& ctx, JobId i, const Rational& t);
Rational capped_volume_ahead(const PairContext& ctx, JobId i, const Rational& t);

// Average-flow potential: (1/(m eps)) * sum over SRPT-alive i of
// (srpt_volume_ahead + m * remaining_i - ref_volume_ahead). Requires eps > 0.
Rational potential_avg(const PairContext& ctx, const Snapshot& snap);
Rational potential_avg(const PairContext& ctx, const Rational& t, Phase phase = Phase::AfterArrivals);

// k-th power potential: sum over SRPT-alive i of
// max(t - r_i + (1/(m eps)) * (...), 0)^k / (1-eps)^k - (t - r_i)^k.
// Requires 0 < eps <= 1/2.
Rational potential_lk(const PairContext& ctx, const Snapshot& snap);
Rational potential_lk(const PairContext& ctx, const Rational& t, Phase phase = Phase::AfterArrivals);

enum class Relation { LessEq, Equal };

struct CheckRecord {
    std::string label;
    Rational time;
    std::optional<JobId> job;
    std::optional<JobId> other;
    Rational value;
    Rational bound;
    Relation relation = Relation::LessEq;
    bool pass = true;

    Rational slack() const { return bound - value; }
};

struct PotentialReport {
    std::string check;      // e.g. "avg-arrival"
    std::string condition;  // arrival | completion | running | global | status | charge
    std::string reference;
    Rational epsilon;
    unsigned k = 1;
    bool keep_passing_records = true;

    std::vector<CheckRecord> records;  // all records, or only failures when !keep_passing_records
    std::size_t n_records = 0;
    std::size_t n_events = 0;
    Rational total_value;
    Rational total_bound;
    std::optional<Rational> worst_slack;
    bool verdict = true;
    std::vector<std::string> notices;

    void add(CheckRecord record);
    std::vector<CheckRecord> witnesses() const;
};

struct ConditionReports {
    PotentialReport arrival;
    PotentialReport completion;
    PotentialReport running;
    PotentialReport global;

    bool verdict() const { return arrival.verdict && completion.verdict && running.verdict && global.verdict; }
};

struct CheckOptions {
    bool keep_passing_records = true;
};

// R - V <= m p_i for every job i at every breakpoint (after events) and every
// midpoint between breakpoints, plus the identity capped_volume_ahead == srpt_volume_ahead.
PotentialReport check_status_lemma(const PairContext& ctx, const CheckOptions& opts = {});

// Arrival jumps, aggregate completion charge, running-condition deltas and the
// global 4/eps bound for the average-flow potential. Requires eps > 0.
ConditionReports check_avg_conditions(const PairContext& ctx, const CheckOptions& opts = {});

// Same structure for the k-th power potential; the running condition is checked
// on pieces split at the roots of each job's max-expression. Requires 0 < eps <= 1/2.
ConditionReports check_lk_conditions(const PairContext& ctx, const CheckOptions& opts = {});

// sum_i (V_i / m)^k <= (1+eps)^k * reference k-th power flow, where V_i is
// ref_volume_ahead at SRPT's completion of i, plus the pairwise work inequality
// for every job j contributing to V_i. Requires 0 < eps <= 1/2.
PotentialReport check_charge_lemma(const PairContext& ctx, const CheckOptions& opts = {});

// Theorem constants.
Rational avg_flow_bound(const Rational& eps);                // 4/eps
Rational lk_power_bound(const Rational& eps, unsigned k);    // (2/(eps(1-eps)))^k + ((1+eps)/eps^2)^k

}  // namespace srptlab
