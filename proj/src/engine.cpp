#include "srptlab/engine.hpp"

#include <algorithm>

namespace srptlab {

std::optional<Rational> next_event(const SimState& state, const SpeedConfig& speed)
{
    std::optional<Rational> best;
    if (!state.pending.empty()) best = state.pending.front().release;
    for (JobId id : state.running) {
        auto it = std::find_if(state.alive.begin(), state.alive.end(),
                               [id](const AliveJob& a) { return a.id == id; });
        if (it == state.alive.end()) continue;
        Rational done = state.now + it->remaining / speed.speed;
        if (!best || done < *best) best = std::move(done);
    }
    return best;
}

Priority srpt_priority()
{
    return {"srpt", [](const JobView& a, const JobView& b) {
                if (a.remaining != b.remaining) return a.remaining < b.remaining;
                if (a.release != b.release) return a.release < b.release;
                return a.id < b.id;
            }};
}

Priority fifo_priority()
{
    return {"fifo", [](const JobView& a, const JobView& b) {
                if (a.release != b.release) return a.release < b.release;
                return a.id < b.id;
            }};
}

Priority lrpt_priority()
{
    return {"lrpt", [](const JobView& a, const JobView& b) {
                if (a.remaining != b.remaining) return a.remaining > b.remaining;
                if (a.release != b.release) return a.release < b.release;
                return a.id < b.id;
            }};
}

Priority priority_by_name(const std::string& name)
{
    if (name == "srpt") return srpt_priority();
    if (name == "fifo") return fifo_priority();
    if (name == "lrpt") return lrpt_priority();
    throw InputError("unknown policy '" + name + "'");
}

ExecutionTrace simulate_policy(const Instance& instance, const SpeedConfig& speed, const Priority& priority)
{
    const auto m = static_cast<std::size_t>(instance.machines);
    ExecutionTrace trace;
    trace.instance = instance;
    trace.speed = speed;
    trace.completions.assign(instance.size(), Rational(0));

    SimState state;
    state.pending = instance.jobs;  // already sorted by (release, id)

    auto view = [&](const AliveJob& a) {
        const Job& job = instance.job(a.id);
        return JobView{a.id, a.remaining, job.size, job.release};
    };

    for (;;) {
        // Completions were removed at the end of the previous step, so arrivals come second.
        auto released = std::find_if(state.pending.begin(), state.pending.end(),
                                     [&](const Job& j) { return j.release > state.now; });
        for (auto it = state.pending.begin(); it != released; ++it) state.alive.push_back({it->id, it->size});
        state.pending.erase(state.pending.begin(), released);

        std::sort(state.alive.begin(), state.alive.end(),
                  [&](const AliveJob& a, const AliveJob& b) { return priority.before(view(a), view(b)); });
        state.running.clear();
        for (std::size_t i = 0; i < state.alive.size() && i < m; ++i) state.running.push_back(state.alive[i].id);

        const std::optional<Rational> next = next_event(state, speed);
        if (!next) break;

        Segment seg{state.now, *next, std::vector<std::optional<JobId>>(m)};
        for (std::size_t i = 0; i < state.running.size(); ++i) seg.assignment[i] = state.running[i];
        const Rational served = (*next - state.now) * speed.speed;
        for (std::size_t i = 0; i < state.running.size(); ++i) {
            state.alive[i].remaining -= served;
            if (state.alive[i].remaining == Rational(0)) trace.completions[state.alive[i].id] = *next;
        }
        state.alive.erase(std::remove_if(state.alive.begin(), state.alive.end(),
                                         [](const AliveJob& a) { return a.remaining == Rational(0); }),
                          state.alive.end());
        trace.segments.push_back(std::move(seg));
        state.now = *next;
    }
    finalize_trace(trace);
    return trace;
}

ExecutionTrace simulate_srpt(const Instance& instance, const SpeedConfig& speed)
{
    return simulate_policy(instance, speed, srpt_priority());
}

}  // namespace srptlab
