#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "srptlab/model.hpp"

namespace srptlab {

struct AliveJob {
    JobId id = 0;
    Rational remaining;
};

// Snapshot of an event-driven simulation between two events.
struct SimState {
    Rational now;
    std::vector<AliveJob> alive;
    std::vector<Job> pending;      // not yet released, sorted by (release, id)
    std::vector<JobId> running;    // at most m ids, in machine order
};

// Earliest of the next arrival and the next completion among running jobs,
// or nullopt when the system is empty.
std::optional<Rational> next_event(const SimState& state, const SpeedConfig& speed);

// Read-only view of a job the policy ranks.
struct JobView {
    JobId id;
    const Rational& remaining;
    const Rational& size;
    const Rational& release;
};

// Strict total order: `before(a, b)` means a is served ahead of b.
struct Priority {
    std::string name;
    std::function<bool(const JobView&, const JobView&)> before;
};

// (remaining, release, id)
Priority srpt_priority();
// (release, id)
Priority fifo_priority();
// (-remaining, release, id)
Priority lrpt_priority();
// Looks up "srpt", "fifo" or "lrpt"; throws InputError otherwise.
Priority priority_by_name(const std::string& name);

// Work-conserving simulation on m identical speed-s machines, re-ranking at
// every arrival and completion. Running jobs occupy machines 0.. in priority order.
ExecutionTrace simulate_policy(const Instance& instance, const SpeedConfig& speed, const Priority& priority);

// Shortest remaining processing time first, ties by (release, id).
ExecutionTrace simulate_srpt(const Instance& instance, const SpeedConfig& speed);

}  // namespace srptlab
