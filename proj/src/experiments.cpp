#include "srptlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "srptlab/engine.hpp"

namespace srptlab {

namespace {

std::string join_ks(const std::vector<unsigned>& ks)
{
    std::string s;
    for (unsigned k : ks) s += (s.empty() ? "" : ",") + std::to_string(k);
    return s;
}

void corrupt(ExecutionTrace& trace)
{
    // Remove the final stretch of the last segment that does any work.
    for (auto it = trace.segments.rbegin(); it != trace.segments.rend(); ++it) {
        for (auto& a : it->assignment) {
            if (a) {
                a.reset();
                return;
            }
        }
    }
}

VerifyRow summarize(const std::string& reference, const std::string& check, const std::string& ks,
                    const std::vector<const PotentialReport*>& reports)
{
    VerifyRow row{reference, check, ks, true, std::nullopt};
    for (const PotentialReport* r : reports) {
        row.pass = row.pass && r->verdict;
        if (r->worst_slack && (!row.worst_slack || *r->worst_slack < *row.worst_slack)) row.worst_slack = r->worst_slack;
    }
    return row;
}

}  // namespace

bool VerifyOutcome::pass() const
{
    return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

std::vector<PotentialReport> verify_pair(const PairContext& ctx, bool include_power_checks, const CheckOptions& opts)
{
    std::vector<PotentialReport> out;
    out.push_back(check_status_lemma(ctx, opts));
    if (ctx.epsilon() > Rational(0)) {
        ConditionReports avg = check_avg_conditions(ctx, opts);
        for (PotentialReport* r : {&avg.arrival, &avg.completion, &avg.running, &avg.global}) out.push_back(std::move(*r));
    }
    if (include_power_checks) {
        ConditionReports lk = check_lk_conditions(ctx, opts);
        for (PotentialReport* r : {&lk.arrival, &lk.completion, &lk.running, &lk.global}) out.push_back(std::move(*r));
        out.push_back(check_charge_lemma(ctx, opts));
    }
    return out;
}

VerifyOutcome run_verification(const VerifyRequest& request)
{
    const Rational eps = request.speed.epsilon();
    if (eps <= Rational(0)) throw DomainError("epsilon out of theorem range: speed must exceed 1");
    const bool high_k = std::any_of(request.ks.begin(), request.ks.end(), [](unsigned k) { return k >= 2; });
    if (std::any_of(request.ks.begin(), request.ks.end(), [](unsigned k) { return k == 0; }))
        throw DomainError("k must be a positive integer");
    const bool power_in_range = eps <= Rational(1, 2);
    if (high_k && !power_in_range)
        throw DomainError("epsilon out of theorem range: k-th power checks need epsilon <= 1/2, got " + eps.str());

    VerifyOutcome outcome;
    if (!power_in_range)
        outcome.notices.push_back("epsilon " + eps.str() + " is out of theorem range for k-th power checks; skipped");

    const CheckOptions opts{request.keep_passing_records};
    const ExecutionTrace srpt = simulate_srpt(request.instance, request.speed);
    const std::vector<unsigned> ks = request.ks.empty() ? std::vector<unsigned>{1} : request.ks;

    for (const std::string& ref : request.references) {
        // Status and average-flow checks use the total-flow reference; k-th power
        // checks use the reference for that k (they differ only for the oracle).
        auto reference_for = [&](unsigned k) -> std::optional<ExecutionTrace> {
            ExecutionTrace trace;
            if (ref == "oracle") {
                try {
                    trace = brute_force_opt(request.instance, k, request.limits).trace;
                } catch (const OracleLimitError& e) {
                    return std::nullopt;
                }
            } else if (ref == "unit-srpt") {
                trace = simulate_srpt(request.instance, SpeedConfig::unit());
            } else if (ref == "fifo") {
                trace = simulate_policy(request.instance, SpeedConfig::unit(), fifo_priority());
            } else {
                throw InputError("unknown reference '" + ref + "' (expected oracle, unit-srpt or fifo)");
            }
            if (request.corrupt_reference) corrupt(trace);
            return trace;
        };

        std::optional<ExecutionTrace> base = reference_for(1);
        if (!base) {
            outcome.notices.push_back("reference '" + ref + "' omitted: instance outside oracle limits");
            continue;
        }
        const TraceValidation feas = validate_trace(*base);
        if (!feas.ok) {
            PotentialReport r;
            r.check = "feasibility";
            r.condition = "feasibility";
            r.reference = ref;
            r.epsilon = eps;
            r.keep_passing_records = false;
            for (const TraceViolation& v : feas.violations) {
                CheckRecord rec;
                rec.label = v.message;
                rec.job = v.job;
                rec.value = Rational(1);
                rec.bound = Rational(0);
                rec.relation = Relation::Equal;
                r.add(std::move(rec));
            }
            outcome.rows.push_back(summarize(ref, "feasibility", "-", {&r}));
            outcome.reports.push_back(std::move(r));
            continue;
        }

        const PairContext base_ctx(srpt, *base, 1, ref);
        const std::size_t first = outcome.reports.size();
        outcome.reports.push_back(check_status_lemma(base_ctx, opts));
        ConditionReports avg = check_avg_conditions(base_ctx, opts);
        for (PotentialReport* r : {&avg.arrival, &avg.completion, &avg.running, &avg.global})
            outcome.reports.push_back(std::move(*r));
        const std::size_t after_avg = outcome.reports.size();

        std::vector<std::size_t> lk_idx, charge_idx;
        if (power_in_range) {
            for (unsigned k : ks) {
                std::optional<ExecutionTrace> trace_k = k == 1 ? base : reference_for(k);
                if (!trace_k) continue;
                const PairContext ctx(srpt, *trace_k, k, ref);
                ConditionReports lk = check_lk_conditions(ctx, opts);
                for (PotentialReport* r : {&lk.arrival, &lk.completion, &lk.running, &lk.global}) {
                    lk_idx.push_back(outcome.reports.size());
                    outcome.reports.push_back(std::move(*r));
                }
                charge_idx.push_back(outcome.reports.size());
                outcome.reports.push_back(check_charge_lemma(ctx, opts));
            }
        }

        outcome.rows.push_back(summarize(ref, "status", "-", {&outcome.reports[first]}));
        std::vector<const PotentialReport*> group;
        for (std::size_t i = first + 1; i < after_avg; ++i) group.push_back(&outcome.reports[i]);
        outcome.rows.push_back(summarize(ref, "avg", "1", group));
        if (power_in_range) {
            group.clear();
            for (std::size_t i : lk_idx) group.push_back(&outcome.reports[i]);
            outcome.rows.push_back(summarize(ref, "lk", join_ks(ks), group));
            group.clear();
            for (std::size_t i : charge_idx) group.push_back(&outcome.reports[i]);
            outcome.rows.push_back(summarize(ref, "charge", join_ks(ks), group));
        }
    }
    return outcome;
}

Json to_json(const VerifyOutcome& outcome)
{
    Json rows = Json::array();
    for (const VerifyRow& r : outcome.rows)
        rows.push_back(Json{{"reference", r.reference},
                            {"check", r.check},
                            {"k", r.ks},
                            {"verdict", r.pass ? "pass" : "fail"},
                            {"worst_slack", r.worst_slack ? to_json(*r.worst_slack) : Json(nullptr)}});
    Json reports = Json::array();
    for (const PotentialReport& r : outcome.reports) reports.push_back(to_json(r));
    return Json{{"verdict", outcome.pass() ? "pass" : "fail"},
                {"rows", std::move(rows)},
                {"reports", std::move(reports)},
                {"notices", outcome.notices}};
}

std::string verify_csv(const VerifyOutcome& outcome, const std::string& instance_label)
{
    std::ostringstream out;
    out << "instance,check,eps,k,reference,n_events,worst_slack,verdict\n";
    for (const PotentialReport& r : outcome.reports)
        out << instance_label << ',' << r.check << ',' << r.epsilon.short_str() << ',' << r.k << ',' << r.reference << ','
            << r.n_events << ',' << (r.worst_slack ? r.worst_slack->str() : "") << ',' << (r.verdict ? "pass" : "fail")
            << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Sweeps

SweepManifest manifest_from_json(const Json& j)
{
    SweepManifest m;
    try {
        auto range = [](const Json& v) -> IntRange {
            if (v.is_number_integer()) return {v.get<std::int64_t>(), v.get<std::int64_t>()};
            return {v.at(0).get<std::int64_t>(), v.at(1).get<std::int64_t>()};
        };
        for (const Json& f : j.value("families", Json::array())) m.families.push_back(family_from_string(f.get<std::string>()));
        if (j.contains("seeds")) {
            const Json& s = j["seeds"];
            if (s.is_number_integer()) {
                m.seed_count = s.get<std::uint64_t>();
            } else {
                m.seed_start = s.value("start", std::uint64_t{0});
                m.seed_count = s.at("count").get<std::uint64_t>();
            }
        }
        if (j.contains("n")) m.n_range = range(j["n"]);
        if (j.contains("size_range")) m.size_range = range(j["size_range"]);
        if (j.contains("release_range")) m.release_range = range(j["release_range"]);
        for (const Json& e : j.value("eps", Json::array())) m.eps.push_back(rational_from_json(e));
        for (const Json& v : j.value("m", Json::array())) m.machines.push_back(v.get<int>());
        if (j.contains("k")) {
            m.ks.clear();
            for (const Json& v : j["k"]) m.ks.push_back(v.get<unsigned>());
        }
        const std::string mode = j.value("mode", std::string("theorem"));
        if (mode == "theorem")
            m.mode = SweepMode::Theorem;
        else if (mode == "one-competitive")
            m.mode = SweepMode::OneCompetitive;
        else
            throw InputError("unknown sweep mode '" + mode + "'");
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed manifest: ") + e.what());
    }
    if (m.n_range.lo < 0 || m.n_range.lo > m.n_range.hi) throw InputError("invalid n range");
    for (const Rational& e : m.eps)
        if (e <= Rational(0)) throw DomainError("sweep epsilon must be > 0");
    for (unsigned k : m.ks)
        if (k == 0) throw DomainError("k must be a positive integer");
    return m;
}

std::string RatioReport::ratio_decimal() const
{
    if (oracle_objective == Rational(0)) return "-";
    return (srpt_objective / oracle_objective).decimal(12);
}

std::string RatioReport::bound_decimal() const { return bound.decimal(12); }

bool SweepResult::all_within_bound() const
{
    return std::all_of(rows.begin(), rows.end(), [](const RatioReport& r) { return r.within_bound; });
}

unsigned worker_count()
{
    if (const char* env = std::getenv("SRPTLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

struct SweepTask {
    Family family;
    std::uint64_t seed;
    int machines;
};

struct TaskOutput {
    std::vector<RatioReport> rows;
    std::vector<std::string> notices;
};

TaskOutput run_task(const SweepManifest& manifest, const SweepTask& task)
{
    TaskOutput out;
    GenSpec spec;
    spec.family = task.family;
    spec.machines = task.machines;
    spec.size_range = manifest.size_range;
    spec.release_range = manifest.release_range;
    spec.seed = task.seed;
    const auto span = static_cast<std::uint64_t>(manifest.n_range.hi - manifest.n_range.lo) + 1;
    spec.n = static_cast<std::size_t>(manifest.n_range.lo) + static_cast<std::size_t>(task.seed % span);
    const Instance inst = generate(spec);
    const std::string where = to_string(task.family) + " seed=" + std::to_string(task.seed) + " m=" +
                              std::to_string(task.machines);

    std::vector<Rational> eps_list = manifest.eps;
    std::vector<unsigned> ks = manifest.ks;
    if (manifest.mode == SweepMode::OneCompetitive) {
        eps_list = {Rational(1) - Rational(1, task.machines)};
        if (std::any_of(ks.begin(), ks.end(), [](unsigned k) { return k != 1; }))
            out.notices.push_back(where + ": one-competitive mode covers total flow only; k > 1 ignored");
        ks = {1};
    }

    std::map<unsigned, Rational> oracle;
    for (unsigned k : ks) {
        try {
            oracle[k] = brute_force_opt(inst, k, manifest.limits).objective;
        } catch (const OracleLimitError& e) {
            out.notices.push_back(where + ": cell skipped, " + e.what());
            return out;
        }
    }
    for (const Rational& eps : eps_list) {
        const ExecutionTrace trace = simulate_srpt(inst, SpeedConfig::from_epsilon(eps));
        const FlowSummary flows = objectives(trace, ks);
        for (unsigned k : ks) {
            RatioReport row;
            row.family = task.family;
            row.seed = task.seed;
            row.machines = task.machines;
            row.eps = eps;
            row.k = k;
            row.srpt_objective = flows.kth_power_flow.at(k);
            row.oracle_objective = oracle.at(k);
            if (manifest.mode == SweepMode::OneCompetitive) {
                row.bound = Rational(1);
            } else if (k == 1) {
                row.bound = avg_flow_bound(eps);
            } else {
                if (eps > Rational(1, 2)) continue;
                row.bound = lk_power_bound(eps, k);
            }
            row.within_bound = row.srpt_objective <= row.bound * row.oracle_objective;
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

}  // namespace

SweepResult run_sweep(const SweepManifest& manifest, unsigned threads)
{
    std::vector<SweepTask> tasks;
    for (Family f : manifest.families)
        for (std::uint64_t s = 0; s < manifest.seed_count; ++s)
            for (int m : manifest.machines) tasks.push_back({f, manifest.seed_start + s, m});

    std::vector<TaskOutput> outputs(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) outputs[i] = run_task(manifest, tasks[i]);
    };
    const unsigned n_threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    SweepResult result;
    if (manifest.mode == SweepMode::Theorem)
        for (const Rational& eps : manifest.eps)
            for (unsigned k : manifest.ks)
                if (k >= 2 && eps > Rational(1, 2) && !tasks.empty())
                    result.notices.push_back("eps=" + eps.short_str() + " k=" + std::to_string(k) +
                                             ": out of theorem range, cells skipped");
    for (TaskOutput& o : outputs) {
        std::move(o.rows.begin(), o.rows.end(), std::back_inserter(result.rows));
        std::move(o.notices.begin(), o.notices.end(), std::back_inserter(result.notices));
    }
    std::sort(result.rows.begin(), result.rows.end(), [](const RatioReport& a, const RatioReport& b) {
        const std::string fa = to_string(a.family), fb = to_string(b.family);
        if (fa != fb) return fa < fb;
        if (a.seed != b.seed) return a.seed < b.seed;
        if (a.machines != b.machines) return a.machines < b.machines;
        if (a.eps != b.eps) return a.eps < b.eps;
        return a.k < b.k;
    });
    return result;
}

std::string sweep_csv(const SweepResult& result)
{
    std::ostringstream out;
    out << kSweepCsvHeader << '\n';
    for (const RatioReport& r : result.rows)
        out << to_string(r.family) << ',' << r.seed << ',' << r.machines << ',' << r.eps.short_str() << ',' << r.k << ','
            << r.srpt_objective.short_str() << ',' << r.oracle_objective.short_str() << ',' << r.ratio_decimal() << ','
            << r.bound_decimal() << ',' << (r.within_bound ? "true" : "false") << '\n';
    return out.str();
}

Json to_json(const SweepResult& result)
{
    Json rows = Json::array();
    for (const RatioReport& r : result.rows)
        rows.push_back(Json{{"family", to_string(r.family)},
                            {"seed", r.seed},
                            {"m", r.machines},
                            {"eps", to_json(r.eps)},
                            {"k", r.k},
                            {"srpt_obj", to_json(r.srpt_objective)},
                            {"oracle_obj", to_json(r.oracle_objective)},
                            {"ratio", r.ratio_decimal()},
                            {"bound", r.bound_decimal()},
                            {"within_bound", r.within_bound}});
    return Json{{"rows", std::move(rows)}, {"notices", result.notices}};
}

std::string sweep_summary(const SweepResult& result)
{
    struct Group {
        Rational worst;
        const RatioReport* at = nullptr;
        std::size_t cells = 0;
        std::size_t violations = 0;
    };
    std::map<std::tuple<int, Rational, unsigned>, Group> groups;
    for (const RatioReport& r : result.rows) {
        Group& g = groups[{r.machines, r.eps, r.k}];
        ++g.cells;
        if (!r.within_bound) ++g.violations;
        if (r.oracle_objective == Rational(0)) continue;
        const Rational ratio = r.srpt_objective / r.oracle_objective;
        if (!g.at || ratio > g.worst) {
            g.worst = ratio;
            g.at = &r;
        }
    }
    std::ostringstream out;
    for (const auto& [key, g] : groups) {
        const auto& [m, eps, k] = key;
        out << "m=" << m << " eps=" << eps.short_str() << " k=" << k << " cells=" << g.cells
            << " violations=" << g.violations;
        if (g.at)
            out << " max_ratio=" << g.worst.decimal(12) << " (" << to_string(g.at->family) << " seed " << g.at->seed
                << ") bound=" << g.at->bound_decimal();
        out << '\n';
    }
    return out.str();
}

}  // namespace srptlab
