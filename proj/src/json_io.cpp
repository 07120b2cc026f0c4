#include "srptlab/json_io.hpp"

#include <algorithm>

namespace srptlab {

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j)
{
    try {
        if (j.is_string()) return Rational::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    throw InputError("expected a rational string, got " + j.dump());
}

Json to_json(const Instance& instance)
{
    Json jobs = Json::array();
    for (const Job& job : instance.jobs)
        jobs.push_back(Json{{"id", job.id}, {"release", to_json(job.release)}, {"size", to_json(job.size)}});
    return Json{{"machines", instance.machines}, {"jobs", std::move(jobs)}};
}

Instance instance_from_json(const Json& j)
{
    try {
        Instance inst;
        inst.machines = j.at("machines").get<int>();
        for (const Json& job : j.at("jobs"))
            inst.jobs.push_back(Job{job.at("id").get<JobId>(), rational_from_json(job.at("release")),
                                    rational_from_json(job.at("size"))});
        return validate_instance(std::move(inst));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed instance JSON: ") + e.what());
    }
}

Json to_json(const ExecutionTrace& trace)
{
    Json segments = Json::array();
    for (const Segment& seg : trace.segments) {
        Json assignment = Json::array();
        for (const auto& a : seg.assignment) assignment.push_back(a ? Json(*a) : Json(nullptr));
        segments.push_back(Json{{"start", to_json(seg.start)}, {"end", to_json(seg.end)}, {"assignment", std::move(assignment)}});
    }
    Json completions = Json::object();
    for (JobId id = 0; id < trace.completions.size(); ++id) completions[std::to_string(id)] = to_json(trace.completions[id]);
    return Json{{"instance", to_json(trace.instance)},
                {"speed", to_json(trace.speed.speed)},
                {"segments", std::move(segments)},
                {"completions", std::move(completions)}};
}

ExecutionTrace trace_from_json(const Json& j)
{
    try {
        ExecutionTrace trace;
        trace.instance = instance_from_json(j.at("instance"));
        trace.speed = SpeedConfig::from_speed(rational_from_json(j.at("speed")));
        for (const Json& s : j.at("segments")) {
            Segment seg{rational_from_json(s.at("start")), rational_from_json(s.at("end")), {}};
            for (const Json& a : s.at("assignment"))
                seg.assignment.push_back(a.is_null() ? std::nullopt : std::optional<JobId>(a.get<JobId>()));
            trace.segments.push_back(std::move(seg));
        }
        trace.completions.assign(trace.instance.size(), Rational(0));
        for (const auto& [key, value] : j.at("completions").items()) {
            const auto id = static_cast<JobId>(std::stoul(key));
            if (id >= trace.completions.size()) throw InputError("completion for unknown job " + key);
            trace.completions[id] = rational_from_json(value);
        }
        // Events are derived data; completions are kept as written so validate_trace can audit them.
        std::vector<Rational> events;
        for (const Job& job : trace.instance.jobs) events.push_back(job.release);
        for (const Rational& c : trace.completions) events.push_back(c);
        std::sort(events.begin(), events.end());
        events.erase(std::unique(events.begin(), events.end()), events.end());
        trace.events = std::move(events);
        return trace;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed trace JSON: ") + e.what());
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
}

Json to_json(const OracleResult& result)
{
    Json j = to_json(result.trace);
    j["objective"] = to_json(result.objective);
    j["k"] = result.k;
    j["exact"] = result.exact;
    j["class_note"] = result.class_note;
    return j;
}

Json to_json(const FlowSummary& summary)
{
    Json flows = Json::object();
    for (JobId id = 0; id < summary.per_job_flow.size(); ++id) flows[std::to_string(id)] = to_json(summary.per_job_flow[id]);
    Json powers = Json::object();
    for (const auto& [k, v] : summary.kth_power_flow) powers[std::to_string(k)] = to_json(v);
    Json norms = Json::object();
    for (const auto& [k, v] : summary.lk_norm) norms[std::to_string(k)] = v;
    return Json{{"flows", std::move(flows)},
                {"total_flow", to_json(summary.total_flow)},
                {"kth_power_flow", std::move(powers)},
                {"lk_norm", std::move(norms)}};
}

namespace {

Json record_json(const CheckRecord& r)
{
    Json j{{"label", r.label}, {"time", to_json(r.time)}};
    j["job"] = r.job ? Json(*r.job) : Json(nullptr);
    if (r.other) j["other"] = *r.other;
    j["value"] = to_json(r.value);
    j["bound"] = to_json(r.bound);
    j["relation"] = r.relation == Relation::Equal ? "==" : "<=";
    j["pass"] = r.pass;
    return j;
}

}  // namespace

Json to_json(const PotentialReport& report)
{
    Json witnesses = Json::array();
    for (const CheckRecord& r : report.witnesses()) witnesses.push_back(record_json(r));
    Json params{{"condition", report.condition},
                {"eps", to_json(report.epsilon)},
                {"k", report.k},
                {"reference", report.reference}};
    Json j{{"check", report.check},
           {"params", std::move(params)},
           {"n_events", report.n_events},
           {"n_records", report.n_records},
           {"worst_slack", report.worst_slack ? to_json(*report.worst_slack) : Json(nullptr)},
           {"verdict", report.verdict ? "pass" : "fail"},
           {"witnesses", std::move(witnesses)}};
    if (!report.notices.empty()) j["notices"] = report.notices;
    return j;
}

Json to_json(const GenSpec& spec)
{
    return Json{{"family", to_string(spec.family)},
                {"n", spec.n},
                {"m", spec.machines},
                {"size_range", {spec.size_range.lo, spec.size_range.hi}},
                {"release_range", {spec.release_range.lo, spec.release_range.hi}},
                {"seed", spec.seed}};
}

GenSpec genspec_from_json(const Json& j)
{
    try {
        GenSpec spec;
        spec.family = family_from_string(j.value("family", std::string("uniform")));
        spec.n = j.value("n", std::size_t{0});
        spec.machines = j.value("m", 1);
        if (j.contains("size_range")) spec.size_range = {j["size_range"].at(0).get<std::int64_t>(), j["size_range"].at(1).get<std::int64_t>()};
        if (j.contains("release_range"))
            spec.release_range = {j["release_range"].at(0).get<std::int64_t>(), j["release_range"].at(1).get<std::int64_t>()};
        spec.seed = j.value("seed", std::uint64_t{0});
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed generator spec: ") + e.what());
    }
}

}  // namespace srptlab
