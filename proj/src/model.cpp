#include "srptlab/model.hpp"

#include <algorithm>
#include <set>

namespace srptlab {

Instance validate_instance(Instance instance)
{
    if (instance.machines < 1) throw InputError("machines must be >= 1");
    const std::size_t n = instance.jobs.size();
    std::vector<bool> seen(n, false);
    for (const Job& job : instance.jobs) {
        if (job.size <= Rational(0))
            throw InputError("non-positive size for job " + std::to_string(job.id));
        if (job.release < Rational(0))
            throw InputError("negative release for job " + std::to_string(job.id));
    }
    std::set<JobId> ids;
    for (const Job& job : instance.jobs) {
        if (!ids.insert(job.id).second) throw InputError("duplicate id " + std::to_string(job.id));
    }
    for (const Job& job : instance.jobs) {
        if (job.id >= n) throw InputError("job ids must be 0..n-1 without gaps (found " + std::to_string(job.id) + ")");
        seen[job.id] = true;
    }
    std::sort(instance.jobs.begin(), instance.jobs.end(), [](const Job& a, const Job& b) {
        if (a.release != b.release) return a.release < b.release;
        return a.id < b.id;
    });
    instance.index_of_.assign(n, 0);
    for (std::size_t idx = 0; idx < n; ++idx) instance.index_of_[instance.jobs[idx].id] = idx;
    return instance;
}

SpeedConfig SpeedConfig::from_speed(const Rational& s)
{
    if (s <= Rational(0)) throw DomainError("speed must be positive");
    return SpeedConfig{s};
}

bool Segment::runs(JobId id) const
{
    return std::any_of(assignment.begin(), assignment.end(),
                       [id](const std::optional<JobId>& a) { return a && *a == id; });
}

void finalize_trace(ExecutionTrace& trace)
{
    const std::size_t n = trace.instance.size();
    trace.completions.assign(n, Rational(0));
    for (const Segment& seg : trace.segments)
        for (const auto& a : seg.assignment)
            if (a && *a < n) trace.completions[*a] = seg.end;
    std::vector<Rational> events;
    events.reserve(2 * n);
    for (const Job& job : trace.instance.jobs) events.push_back(job.release);
    for (const Rational& c : trace.completions) events.push_back(c);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    trace.events = std::move(events);
}

TraceValidation validate_trace(const ExecutionTrace& trace)
{
    TraceValidation result;
    auto flag = [&](std::string kind, std::optional<std::size_t> seg, std::optional<JobId> job, std::string msg) {
        result.ok = false;
        result.violations.push_back({std::move(kind), seg, job, std::move(msg)});
    };

    const Instance& inst = trace.instance;
    const std::size_t n = inst.size();
    const auto m = static_cast<std::size_t>(inst.machines);

    if (trace.completions.size() != n) {
        flag("completion table", std::nullopt, std::nullopt, "completions has wrong length");
        return result;
    }

    std::vector<Rational> work(n);
    std::vector<std::optional<Rational>> first_start(n), last_end(n);

    for (std::size_t s = 0; s < trace.segments.size(); ++s) {
        const Segment& seg = trace.segments[s];
        if (!(seg.start < seg.end)) flag("empty segment", s, std::nullopt, "segment start must precede end");
        if (s == 0 && seg.start != Rational(0)) flag("partition", s, std::nullopt, "first segment must start at 0");
        if (s > 0 && trace.segments[s - 1].end != seg.start)
            flag("partition", s, std::nullopt, "segment does not abut its predecessor");
        if (seg.assignment.size() != m) {
            flag("machine count", s, std::nullopt, "assignment size differs from machine count");
            continue;
        }
        std::vector<bool> used(n, false);
        for (const auto& a : seg.assignment) {
            if (!a) continue;
            const JobId id = *a;
            if (id >= n) {
                flag("unknown job", s, id, "assignment names a job outside the instance");
                continue;
            }
            if (used[id]) {
                flag("parallel self-processing", s, id, "job assigned to two machines in one segment");
                continue;
            }
            used[id] = true;
            const Job& job = inst.job(id);
            if (seg.start < job.release) flag("before release", s, id, "job processed before its release");
            work[id] += (seg.end - seg.start) * trace.speed.speed;
            if (!first_start[id]) first_start[id] = seg.start;
            last_end[id] = seg.end;
        }
    }

    Rational horizon(0);
    for (JobId id = 0; id < n; ++id) {
        const Job& job = inst.job(id);
        if (work[id] < job.size)
            flag("work deficit", std::nullopt, id, "work deficit for job: " + work[id].str() + " < " + job.size.str());
        else if (work[id] > job.size)
            flag("work excess", std::nullopt, id, "work excess for job: " + work[id].str() + " > " + job.size.str());
        if (!last_end[id]) {
            flag("completion mismatch", std::nullopt, id, "job never processed");
            continue;
        }
        if (*last_end[id] != trace.completions[id])
            flag("completion mismatch", std::nullopt, id,
                 "completion " + trace.completions[id].str() + " differs from last processing end " + last_end[id]->str());
        horizon = max(horizon, trace.completions[id]);
    }
    if (n > 0 && trace.makespan() != horizon)
        flag("partition", std::nullopt, std::nullopt, "segments must end at the last completion");
    if (n == 0 && !trace.segments.empty()) flag("partition", std::nullopt, std::nullopt, "empty instance has segments");
    return result;
}

}  // namespace srptlab
