#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srptlab/errors.hpp"
#include "srptlab/rational.hpp"

namespace srptlab {

using JobId = std::size_t;

struct Job {
    JobId id = 0;
    Rational release;
    Rational size;

    friend bool operator==(const Job&, const Job&) = default;
};

// A finite job set on `machines` identical machines. After validate_instance the
// jobs are sorted by (release, id) and ids are exactly 0..n-1.
struct Instance {
    std::vector<Job> jobs;
    int machines = 1;

    std::size_t size() const { return jobs.size(); }
    // Lookup by id; requires a validated instance.
    const Job& job(JobId id) const { return jobs[index_of_.at(id)]; }

    friend bool operator==(const Instance& a, const Instance& b)
    {
        return a.machines == b.machines && a.jobs == b.jobs;
    }

private:
    friend Instance validate_instance(Instance instance);
    std::vector<std::size_t> index_of_;
};

// Throws InputError on machines < 1, non-positive size, negative release,
// duplicate id or ids that are not 0..n-1.
Instance validate_instance(Instance instance);

// Machines run at `speed`; epsilon is speed - 1.
struct SpeedConfig {
    Rational speed{1};

    static SpeedConfig unit() { return SpeedConfig{Rational(1)}; }
    static SpeedConfig from_speed(const Rational& s);
    static SpeedConfig from_epsilon(const Rational& eps) { return from_speed(Rational(1) + eps); }

    Rational epsilon() const { return speed - Rational(1); }

    friend bool operator==(const SpeedConfig&, const SpeedConfig&) = default;
};

struct Segment {
    Rational start;
    Rational end;
    // machine index -> job, nullopt = idle
    std::vector<std::optional<JobId>> assignment;

    bool runs(JobId id) const;
    friend bool operator==(const Segment&, const Segment&) = default;
};

// Piecewise-constant schedule with rational breakpoints.
struct ExecutionTrace {
    Instance instance;
    SpeedConfig speed;
    std::vector<Segment> segments;
    std::vector<Rational> completions;  // indexed by job id
    std::vector<Rational> events;       // sorted distinct arrival and completion times

    Rational makespan() const { return segments.empty() ? Rational(0) : segments.back().end; }

    friend bool operator==(const ExecutionTrace&, const ExecutionTrace&) = default;
};

// Fills completions from the segment data and events from releases and completions.
void finalize_trace(ExecutionTrace& trace);

struct TraceViolation {
    std::string kind;
    std::optional<std::size_t> segment;
    std::optional<JobId> job;
    std::string message;
};

struct TraceValidation {
    bool ok = true;
    std::vector<TraceViolation> violations;
};

TraceValidation validate_trace(const ExecutionTrace& trace);

struct FlowSummary {
    std::vector<Rational> per_job_flow;  // indexed by job id
    Rational total_flow;
    std::map<unsigned, Rational> kth_power_flow;
    std::map<unsigned, std::string> lk_norm;  // 12 significant digits
};

}  // namespace srptlab
