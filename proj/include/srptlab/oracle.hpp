#pragma once

#include <optional>
#include <string>
#include <vector>

#include "srptlab/model.hpp"

namespace srptlab {

// Soft limits on what the exhaustive search accepts.
struct OracleLimits {
    std::size_t max_jobs = 10;
    std::int64_t max_total_size = 40;
    int max_machines = 3;
};

struct OracleResult {
    Rational objective;     // k-th power flow of `trace`
    ExecutionTrace trace;   // unit speed
    bool exact = true;      // optimal within the integral-slot class
    std::string class_note = "integral-slot schedules";
    unsigned k = 1;
    std::size_t states_explored = 0;
};

// True iff every release and size is an integer and the instance is within `limits`.
bool oracle_eligible(const Instance& instance, const OracleLimits& limits = {});

// Minimum k-th power flow over unit-speed schedules whose machine assignment
// changes only at integer times, by memoized search over
// (time, multiset of (release, remaining) for alive jobs). The value is an upper
// bound on the unrestricted preemptive optimum, and equals it for m = 1.
// Throws OracleLimitError for non-integral data or instances beyond `limits`.
OracleResult brute_force_opt(const Instance& instance, unsigned k = 1, const OracleLimits& limits = {});

// Total flow of SRPT on one machine of speed m: a lower bound on the m-machine
// preemptive optimum for total flow.
Rational single_machine_relaxation_lb(const Instance& instance);

struct ReferenceSchedule {
    std::string name;  // "oracle", "unit-srpt", "fifo"
    ExecutionTrace trace;
    std::optional<OracleResult> oracle;
};

struct ReferenceSet {
    std::vector<ReferenceSchedule> schedules;
    std::vector<std::string> notices;
};

// Oracle trace for objective k (when eligible), then unit-speed SRPT and FIFO traces.
ReferenceSet reference_schedules(const Instance& instance, unsigned k = 1, const OracleLimits& limits = {});

}  // namespace srptlab
