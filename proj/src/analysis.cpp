#include "srptlab/analysis.hpp"

#include <algorithm>

namespace srptlab {

namespace {

const Rational kZero(0);

Rational overlap_before(const std::pair<Rational, Rational>& iv, const Rational& t)
{
    if (!(iv.first < t)) return kZero;
    return min(iv.second, t) - iv.first;
}

}  // namespace

Rational remaining_at(const ExecutionTrace& trace, JobId job, const Rational& t)
{
    const Job& j = trace.instance.job(job);
    if (t <= j.release) return j.size;
    Rational served(0);
    for (const Segment& seg : trace.segments) {
        if (!(seg.start < t)) break;
        if (seg.runs(job)) served += min(seg.end, t) - seg.start;
    }
    return j.size - served * trace.speed.speed;
}

Rational accumulated_power_flow(const ExecutionTrace& trace, unsigned k, const Rational& t)
{
    Rational total(0);
    for (const Job& job : trace.instance.jobs) {
        if (job.release > t) continue;
        total += (min(trace.completions[job.id], t) - job.release).pow(k);
    }
    return total;
}

FlowSummary objectives(const ExecutionTrace& trace, const std::vector<unsigned>& ks)
{
    FlowSummary summary;
    const std::size_t n = trace.instance.size();
    summary.per_job_flow.assign(n, Rational(0));
    for (const Job& job : trace.instance.jobs) summary.per_job_flow[job.id] = trace.completions[job.id] - job.release;
    for (const Rational& f : summary.per_job_flow) summary.total_flow += f;
    for (unsigned k : ks) {
        if (k == 0) throw DomainError("k must be a positive integer");
        Rational power(0);
        for (const Rational& f : summary.per_job_flow) power += f.pow(k);
        summary.kth_power_flow[k] = power;
        summary.lk_norm[k] = kth_root_decimal(power, k, 12);
    }
    return summary;
}

// ---------------------------------------------------------------------------
// PairContext

PairContext::PairContext(ExecutionTrace srpt, ExecutionTrace reference, unsigned k, std::string reference_name)
    : srpt_(std::move(srpt)), ref_(std::move(reference)), k_(k), reference_name_(std::move(reference_name))
{
    if (k_ == 0) throw DomainError("k must be a positive integer");
    if (!(srpt_.instance == ref_.instance)) throw InputError("traces are over different instances");
    if (ref_.speed.speed != Rational(1)) throw InputError("reference schedule must run at unit speed");
    for (const ExecutionTrace* t : {&srpt_, &ref_}) {
        const TraceValidation v = validate_trace(*t);
        if (!v.ok) throw InputError("infeasible trace: " + v.violations.front().kind + ": " + v.violations.front().message);
    }
    srpt_profile_ = build_profile(srpt_);
    ref_profile_ = build_profile(ref_);

    std::vector<Rational> points{Rational(0)};
    for (const Job& job : instance().jobs) points.push_back(job.release);
    for (const ExecutionTrace* t : {&srpt_, &ref_}) {
        for (const Segment& seg : t->segments) {
            points.push_back(seg.start);
            points.push_back(seg.end);
        }
        for (const Rational& c : t->completions) points.push_back(c);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    breakpoints_ = std::move(points);
}

PairContext::Profile PairContext::build_profile(const ExecutionTrace& trace)
{
    Profile profile(trace.instance.size());
    for (const Segment& seg : trace.segments) {
        for (const auto& a : seg.assignment) {
            if (!a) continue;
            auto& ivs = profile[*a];
            if (!ivs.empty() && ivs.back().second == seg.start)
                ivs.back().second = seg.end;
            else
                ivs.emplace_back(seg.start, seg.end);
        }
    }
    return profile;
}

Rational PairContext::remaining(const Profile& p, const ExecutionTrace& trace, JobId id, const Rational& t)
{
    const Job& job = trace.instance.job(id);
    if (t <= job.release) return job.size;
    Rational served(0);
    for (const auto& iv : p[id]) {
        if (!(iv.first < t)) break;
        served += overlap_before(iv, t);
    }
    return job.size - served * trace.speed.speed;
}

Snapshot take_snapshot(const PairContext& ctx, const Rational& t, Phase phase)
{
    const Instance& inst = ctx.instance();
    const std::size_t n = inst.size();
    Snapshot snap;
    snap.time = t;
    snap.phase = phase;
    snap.in_srpt.assign(n, false);
    snap.in_ref.assign(n, false);
    snap.srpt_remaining.assign(n, Rational(0));
    snap.ref_remaining.assign(n, Rational(0));
    for (const Job& job : inst.jobs) {
        const bool released = phase == Phase::AfterArrivals ? job.release <= t : job.release < t;
        const Rational& c = ctx.srpt().completions[job.id];
        snap.srpt_remaining[job.id] = ctx.srpt_remaining(job.id, t);
        snap.ref_remaining[job.id] = ctx.ref_remaining(job.id, t);
        snap.in_srpt[job.id] = released && (phase == Phase::BeforeEvents ? t <= c : t < c);
        snap.in_ref[job.id] = released && snap.ref_remaining[job.id] > kZero;
    }
    return snap;
}

Rational srpt_volume_ahead(const PairContext& ctx, const Snapshot& snap, JobId i)
{
    const auto& c = ctx.srpt().completions;
    Rational total(0);
    for (JobId j = 0; j < snap.in_srpt.size(); ++j)
        if (snap.in_srpt[j] && c[j] <= c[i]) total += snap.srpt_remaining[j];
    return total;
}

Rational ref_volume_ahead(const PairContext& ctx, const Snapshot& snap, JobId i)
{
    const auto& c = ctx.srpt().completions;
    const Instance& inst = ctx.instance();
    const Rational& pi = inst.job(i).size;
    Rational total(0);
    for (JobId j = 0; j < snap.in_ref.size(); ++j)
        if (snap.in_ref[j] && c[j] <= c[i] && inst.job(j).size <= pi) total += snap.ref_remaining[j];
    return total;
}

Rational capped_volume_ahead(const PairContext& ctx, const Snapshot& snap, JobId i)
{
    const auto& c = ctx.srpt().completions;
    const Rational& pi = ctx.instance().job(i).size;
    Rational total(0);
    for (JobId j = 0; j < snap.in_srpt.size(); ++j)
        if (snap.in_srpt[j] && c[j] <= c[i] && snap.srpt_remaining[j] <= pi) total += snap.srpt_remaining[j];
    return total;
}

Rational srpt_volume_ahead(const PairContext& ctx, JobId i, const Rational& t)
{
    return srpt_volume_ahead(ctx, take_snapshot(ctx, t), i);
}

Rational ref_volume_ahead(const PairContext& ctx, JobId i, const Rational& t)
{
    return ref_volume_ahead(ctx, take_snapshot(ctx, t), i);
}

Rational capped_volume_ahead(const PairContext& ctx, JobId i, const Rational& t)
{
    return capped_volume_ahead(ctx, take_snapshot(ctx, t), i);
}

Rational avg_flow_bound(const Rational& eps) { return Rational(4) / eps; }

Rational lk_power_bound(const Rational& eps, unsigned k)
{
    const Rational one(1);
    return (Rational(2) / (eps * (one - eps))).pow(k) + ((one + eps) / (eps * eps)).pow(k);
}

// ---------------------------------------------------------------------------
// Reports

void PotentialReport::add(CheckRecord record)
{
    record.pass = record.relation == Relation::Equal ? record.value == record.bound : record.value <= record.bound;
    ++n_records;
    total_value += record.value;
    total_bound += record.bound;
    const Rational slack = record.relation == Relation::Equal
                               ? (record.value == record.bound ? Rational(0) : -(record.bound - record.value).pow(2))
                               : record.slack();
    if (!worst_slack || slack < *worst_slack) worst_slack = slack;
    if (!record.pass) verdict = false;
    if (keep_passing_records || !record.pass) records.push_back(std::move(record));
}

std::vector<CheckRecord> PotentialReport::witnesses() const
{
    std::vector<CheckRecord> out;
    for (const CheckRecord& r : records)
        if (!r.pass) out.push_back(r);
    return out;
}

namespace {

PotentialReport make_report(const PairContext& ctx, std::string check, std::string condition, unsigned k,
                            const CheckOptions& opts)
{
    PotentialReport r;
    r.check = std::move(check);
    r.condition = std::move(condition);
    r.reference = ctx.reference_name();
    r.epsilon = ctx.epsilon();
    r.k = k;
    r.keep_passing_records = opts.keep_passing_records;
    return r;
}

CheckRecord rec(std::string label, const Rational& t, std::optional<JobId> job, Rational value, Rational bound,
                Relation rel = Relation::LessEq, std::optional<JobId> other = std::nullopt)
{
    CheckRecord r;
    r.label = std::move(label);
    r.time = t;
    r.job = job;
    r.other = other;
    r.value = std::move(value);
    r.bound = std::move(bound);
    r.relation = rel;
    return r;
}

Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

void require_positive_eps(const PairContext& ctx)
{
    if (ctx.epsilon() <= kZero) throw DomainError("epsilon must be > 0 (speed > 1); got " + ctx.epsilon().str());
}

void require_lk_eps(const PairContext& ctx)
{
    const Rational eps = ctx.epsilon();
    if (eps <= kZero || eps > Rational(1, 2))
        throw DomainError("epsilon out of theorem range (0, 1/2]; got " + eps.str());
}

// Per-job pieces of both potentials at one snapshot.
struct Terms {
    std::vector<std::optional<Rational>> numer;  // R + m p - V, for SRPT-alive jobs
    std::vector<Rational> ref_volume;            // V for SRPT-alive jobs
};

Terms evaluate_terms(const PairContext& ctx, const Snapshot& snap)
{
    const std::size_t n = ctx.instance().size();
    const Rational m(ctx.machines());
    Terms terms;
    terms.numer.assign(n, std::nullopt);
    terms.ref_volume.assign(n, Rational(0));
    for (JobId i = 0; i < n; ++i) {
        if (!snap.in_srpt[i]) continue;
        Rational v = ref_volume_ahead(ctx, snap, i);
        terms.numer[i] = srpt_volume_ahead(ctx, snap, i) + m * snap.srpt_remaining[i] - v;
        terms.ref_volume[i] = std::move(v);
    }
    return terms;
}

class PotentialEval {
public:
    explicit PotentialEval(const PairContext& ctx, unsigned k)
        : ctx_(ctx), k_(k), eps_(ctx.epsilon()), m_(ctx.machines()), inv_m_eps_(Rational(1) / (m_ * eps_))
    {
        if (eps_ != Rational(1)) lk_scale_ = Rational(1) / (Rational(1) - eps_).pow(k_);
    }

    Rational avg_term(const Terms& terms, JobId i) const { return *terms.numer[i] * inv_m_eps_; }

    Rational lk_inner(const Snapshot& snap, const Terms& terms, JobId i) const
    {
        return snap.time - ctx_.instance().job(i).release + *terms.numer[i] * inv_m_eps_;
    }

    Rational lk_term(const Snapshot& snap, const Terms& terms, JobId i) const
    {
        const Rational age = snap.time - ctx_.instance().job(i).release;
        return max(lk_inner(snap, terms, i), kZero).pow(k_) * lk_scale_ - age.pow(k_);
    }

    Rational avg(const Terms& terms) const
    {
        Rational sum(0);
        for (JobId i = 0; i < terms.numer.size(); ++i)
            if (terms.numer[i]) sum += avg_term(terms, i);
        return sum;
    }

    Rational lk(const Snapshot& snap, const Terms& terms) const
    {
        Rational sum(0);
        for (JobId i = 0; i < terms.numer.size(); ++i)
            if (terms.numer[i]) sum += lk_term(snap, terms, i);
        return sum;
    }

    const Rational& eps() const { return eps_; }
    const Rational& m() const { return m_; }

private:
    const PairContext& ctx_;
    unsigned k_;
    Rational eps_;
    Rational m_;
    Rational inv_m_eps_;
    Rational lk_scale_{1};
};

// Snapshots on each side of every breakpoint.
struct Timeline {
    struct Point {
        Snapshot before;
        Snapshot after_completions;
        Snapshot after;
        Terms before_terms, completion_terms, after_terms;
        bool srpt_event = false;
    };
    std::vector<Point> points;
};

Timeline build_timeline(const PairContext& ctx)
{
    Timeline tl;
    const auto& events = ctx.srpt().events;
    for (const Rational& t : ctx.breakpoints()) {
        Timeline::Point p;
        p.before = take_snapshot(ctx, t, Phase::BeforeEvents);
        p.after_completions = take_snapshot(ctx, t, Phase::AfterCompletions);
        p.after = take_snapshot(ctx, t, Phase::AfterArrivals);
        p.before_terms = evaluate_terms(ctx, p.before);
        p.completion_terms = evaluate_terms(ctx, p.after_completions);
        p.after_terms = evaluate_terms(ctx, p.after);
        p.srpt_event = std::binary_search(events.begin(), events.end(), t);
        tl.points.push_back(std::move(p));
    }
    return tl;
}

enum class Potential { Avg, Lk };

// Shared arrival / completion / running / global scan for both potentials.
ConditionReports scan_conditions(const PairContext& ctx, Potential which, unsigned k, const CheckOptions& opts)
{
    const bool lk = which == Potential::Lk;
    const std::string prefix = lk ? "lk-" : "avg-";
    ConditionReports out{make_report(ctx, prefix + "arrival", "arrival", k, opts),
                         make_report(ctx, prefix + "completion", "completion", k, opts),
                         make_report(ctx, prefix + "running", "running", k, opts),
                         make_report(ctx, prefix + "global", "global", k, opts)};

    const PotentialEval eval(ctx, k);
    const Rational& eps = eval.eps();
    const Rational& m = eval.m();
    const Rational one(1);
    const Instance& inst = ctx.instance();
    const auto& completions = ctx.srpt().completions;
    const unsigned flow_power = lk ? k : 1;

    auto phi = [&](const Snapshot& s, const Terms& t) { return lk ? eval.lk(s, t) : eval.avg(t); };
    auto term = [&](const Snapshot& s, const Terms& t, JobId i) {
        return lk ? eval.lk_term(s, t, i) : eval.avg_term(t, i);
    };
    auto objective_at = [&](const Rational& t) { return accumulated_power_flow(ctx.srpt(), flow_power, t); };

    const Timeline tl = build_timeline(ctx);
    Rational arrival_total(0), completion_total(0), running_total(0), completion_charge(0);
    const Rational arrival_factor = lk ? (Rational(2) / (eps * (one - eps))).pow(k) : Rational(2) / eps;

    for (const Timeline::Point& p : tl.points) {
        const Rational& t = p.after.time;
        if (!p.srpt_event) continue;
        ++out.arrival.n_events;
        ++out.completion.n_events;

        // Completions: the completing job's term disappears, other terms are unchanged.
        for (const Job& job : inst.jobs) {
            const JobId i = job.id;
            if (!p.before.in_srpt[i]) continue;
            if (completions[i] == t) {
                const Rational removed = -term(p.before, p.before_terms, i);
                const Rational& v = p.before_terms.ref_volume[i];
                if (lk) {
                    const Rational age = t - job.release;
                    if (v <= m * eps * eps * age)
                        out.completion.add(rec("completion-small-volume", t, i, removed, kZero));
                    else
                        out.completion.add(rec("completion-large-volume", t, i, removed,
                                               (v / (m * eps * eps)).pow(k)));
                } else {
                    out.completion.add(rec("completion-removal", t, i, removed, v / (m * eps), Relation::Equal));
                    completion_charge += v / (m * eps);
                }
            } else {
                out.completion.add(rec("completion-noop", t, i,
                                       term(p.after_completions, p.completion_terms, i) -
                                           term(p.before, p.before_terms, i),
                                       kZero, Relation::Equal));
            }
        }
        completion_total += phi(p.after_completions, p.completion_terms) - phi(p.before, p.before_terms);

        // Arrivals: the new term is bounded, existing terms are unchanged.
        Rational arrival_bound_sum(0);
        for (const Job& job : inst.jobs) {
            const JobId i = job.id;
            if (!p.after.in_srpt[i]) continue;
            if (job.release == t) {
                const Rational bound = arrival_factor * (lk ? job.size.pow(k) : job.size);
                arrival_bound_sum += bound;
                out.arrival.add(rec("arrival-new-term", t, i, term(p.after, p.after_terms, i), bound));
            } else {
                out.arrival.add(rec("arrival-noop", t, i,
                                    term(p.after, p.after_terms, i) -
                                        term(p.after_completions, p.completion_terms, i),
                                    kZero, Relation::Equal));
            }
        }
        const Rational jump = phi(p.after, p.after_terms) - phi(p.after_completions, p.completion_terms);
        arrival_total += jump;
        out.arrival.add(rec("arrival-jump", t, std::nullopt, jump, arrival_bound_sum));
    }

    // Running condition on every piece between consecutive breakpoints.
    for (std::size_t idx = 0; idx + 1 < tl.points.size(); ++idx) {
        const Timeline::Point& a = tl.points[idx];
        const Timeline::Point& b = tl.points[idx + 1];
        ++out.running.n_events;

        struct Probe {
            Rational t;
            Rational value;  // accumulated objective + potential
        };
        std::vector<Probe> probes;
        probes.push_back({a.after.time, objective_at(a.after.time) + phi(a.after, a.after_terms)});

        if (lk) {
            std::vector<Rational> roots;
            for (JobId i = 0; i < inst.size(); ++i) {
                if (!a.after.in_srpt[i]) continue;
                const Rational ea = eval.lk_inner(a.after, a.after_terms, i);
                const Rational eb = eval.lk_inner(b.before, b.before_terms, i);
                if ((ea.sign() > 0 && eb.sign() < 0) || (ea.sign() < 0 && eb.sign() > 0))
                    roots.push_back(a.after.time + (b.before.time - a.after.time) * ea / (ea - eb));
            }
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            for (const Rational& r : roots) {
                const Snapshot s = take_snapshot(ctx, r, Phase::AfterArrivals);
                probes.push_back({r, objective_at(r) + phi(s, evaluate_terms(ctx, s))});
            }
        }
        probes.push_back({b.before.time, objective_at(b.before.time) + phi(b.before, b.before_terms)});

        for (std::size_t q = 0; q + 1 < probes.size(); ++q) {
            const Probe& u = probes[q];
            const Probe& v = probes[q + 1];
            const Rational delta = v.value - u.value;
            running_total += delta;
            out.running.add(rec("running-delta", u.t, std::nullopt, delta, kZero));

            const Rational mid = midpoint(u.t, v.t);
            const Snapshot s = take_snapshot(ctx, mid, Phase::AfterArrivals);
            const Rational fm = objective_at(mid) + phi(s, evaluate_terms(ctx, s));
            out.running.add(rec("running-midpoint-left", mid, std::nullopt, fm - u.value, kZero));
            out.running.add(rec("running-midpoint-right", mid, std::nullopt, v.value - fm, kZero));
        }
    }

    // Global bookkeeping.
    const Rational srpt_final = accumulated_power_flow(ctx.srpt(), flow_power, ctx.srpt().makespan());
    Rational ref_final(0);
    Rational size_power_sum(0);
    for (const Job& job : inst.jobs) {
        ref_final += (ctx.reference().completions[job.id] - job.release).pow(flow_power);
        size_power_sum += job.size.pow(flow_power);
    }
    const Timeline::Point& first = tl.points.front();
    const Timeline::Point& last = tl.points.back();
    out.global.add(rec("phi-start", first.before.time, std::nullopt, phi(first.before, first.before_terms), kZero,
                       Relation::Equal));
    out.global.add(rec("phi-end", last.after.time, std::nullopt, phi(last.after, last.after_terms), kZero,
                       Relation::Equal));
    out.global.add(rec("telescoping", last.after.time, std::nullopt, srpt_final,
                       arrival_total + completion_total + running_total, Relation::Equal));
    out.global.add(rec("running-total", last.after.time, std::nullopt, running_total, kZero));
    out.global.add(rec("framework", last.after.time, std::nullopt, srpt_final, arrival_total + completion_total));
    out.global.add(rec("arrival-total", last.after.time, std::nullopt, arrival_total, arrival_factor * size_power_sum));
    if (lk) {
        out.global.add(rec("completion-total", last.after.time, std::nullopt, completion_total,
                           ((one + eps) / (eps * eps)).pow(k) * ref_final));
        out.global.add(rec("theorem-bound", last.after.time, std::nullopt, srpt_final, lk_power_bound(eps, k) * ref_final));
    } else {
        out.completion.add(rec("completion-charge", last.after.time, std::nullopt, completion_charge,
                               (one + eps) / eps * ref_final));
        out.global.add(rec("theorem-bound", last.after.time, std::nullopt, srpt_final, avg_flow_bound(eps) * ref_final));
    }
    return out;
}

}  // namespace

Rational potential_avg(const PairContext& ctx, const Snapshot& snap)
{
    require_positive_eps(ctx);
    return PotentialEval(ctx, 1).avg(evaluate_terms(ctx, snap));
}

Rational potential_avg(const PairContext& ctx, const Rational& t, Phase phase)
{
    return potential_avg(ctx, take_snapshot(ctx, t, phase));
}

Rational potential_lk(const PairContext& ctx, const Snapshot& snap)
{
    require_lk_eps(ctx);
    return PotentialEval(ctx, ctx.k()).lk(snap, evaluate_terms(ctx, snap));
}

Rational potential_lk(const PairContext& ctx, const Rational& t, Phase phase)
{
    return potential_lk(ctx, take_snapshot(ctx, t, phase));
}

PotentialReport check_status_lemma(const PairContext& ctx, const CheckOptions& opts)
{
    PotentialReport report = make_report(ctx, "status", "status", ctx.k(), opts);
    const Instance& inst = ctx.instance();
    const Rational m(ctx.machines());
    const auto& bp = ctx.breakpoints();

    auto check_at = [&](const Rational& t) {
        ++report.n_events;
        const Snapshot snap = take_snapshot(ctx, t, Phase::AfterArrivals);
        for (const Job& job : inst.jobs) {
            if (job.release > t) continue;
            const Rational ahead = srpt_volume_ahead(ctx, snap, job.id);
            const Rational v = ref_volume_ahead(ctx, snap, job.id);
            report.add(rec("volume-gap", t, job.id, ahead - v, m * job.size));
            report.add(rec("capped-identity", t, job.id, capped_volume_ahead(ctx, snap, job.id), ahead, Relation::Equal));
        }
    };
    for (std::size_t i = 0; i < bp.size(); ++i) {
        check_at(bp[i]);
        if (i + 1 < bp.size()) check_at(midpoint(bp[i], bp[i + 1]));
    }
    return report;
}

ConditionReports check_avg_conditions(const PairContext& ctx, const CheckOptions& opts)
{
    require_positive_eps(ctx);
    return scan_conditions(ctx, Potential::Avg, 1, opts);
}

ConditionReports check_lk_conditions(const PairContext& ctx, const CheckOptions& opts)
{
    require_lk_eps(ctx);
    return scan_conditions(ctx, Potential::Lk, ctx.k(), opts);
}

PotentialReport check_charge_lemma(const PairContext& ctx, const CheckOptions& opts)
{
    require_lk_eps(ctx);
    const unsigned k = ctx.k();
    PotentialReport report = make_report(ctx, "charge", "charge", k, opts);
    const Instance& inst = ctx.instance();
    const std::size_t n = inst.size();
    const Rational m(ctx.machines());
    const Rational one(1);
    const Rational eps = ctx.epsilon();
    const Rational work_rate = (one + eps) * m;
    const auto& cs = ctx.srpt().completions;
    const auto& co = ctx.reference().completions;

    // contrib[i][j]: j is alive in the reference at SRPT's completion of i (before
    // arrivals at that instant) and counts toward i's reference volume.
    std::vector<std::vector<bool>> contrib(n, std::vector<bool>(n, false));
    std::vector<std::vector<Rational>> rem_at(n);  // reference remaining of j at cs[i]
    std::vector<Rational> volume(n);
    for (JobId i = 0; i < n; ++i) {
        ++report.n_events;
        const Snapshot snap = take_snapshot(ctx, cs[i], Phase::BeforeEvents);
        rem_at[i] = snap.ref_remaining;
        for (JobId j = 0; j < n; ++j) {
            contrib[i][j] = snap.in_ref[j] && cs[j] <= cs[i] && inst.job(j).size <= inst.job(i).size;
            if (contrib[i][j]) volume[i] += snap.ref_remaining[j];
        }
    }

    Rational lhs(0), ref_power(0);
    for (JobId i = 0; i < n; ++i) lhs += (volume[i] / m).pow(k);
    for (const Job& job : inst.jobs) ref_power += (co[job.id] - job.release).pow(k);
    report.add(rec("charge-sum", ctx.srpt().makespan(), std::nullopt, lhs, (one + eps).pow(k) * ref_power));

    auto arrives_before = [&](JobId a, JobId b) {
        const Rational& ra = inst.job(a).release;
        const Rational& rb = inst.job(b).release;
        return ra < rb || (ra == rb && a < b);
    };

    std::vector<Rational> charged(n);
    for (JobId i = 0; i < n; ++i) {
        Rational telescoped(0);
        for (JobId j = 0; j < n; ++j) {
            if (!contrib[i][j]) continue;
            const Rational& rj = inst.job(j).release;
            Rational earlier(0), earlier_ordered(0);
            for (JobId a = 0; a < n; ++a) {
                if (!contrib[i][a]) continue;
                if (inst.job(a).release < rj) earlier += rem_at[i][a];
                if (arrives_before(a, j)) earlier_ordered += rem_at[i][a];
            }
            Rational later_literal(0), later_full(0);
            for (JobId a = 0; a < n; ++a) {
                if (!contrib[a][j] || !(cs[a] > cs[i])) continue;
                later_literal += ctx.ref_remaining(j, co[a]);
                later_full += inst.job(j).size;
            }
            const Rational left = (volume[i] - earlier) / work_rate;
            const Rational flow_j = co[j] - rj;
            report.add(rec("work-leq", cs[i], i, left, flow_j - later_literal / work_rate, Relation::LessEq, j));
            report.add(rec("work-leq-full-size", cs[i], i, left, flow_j - later_full / work_rate, Relation::LessEq, j));

            const Rational charge = ((volume[i] - earlier_ordered) / m).pow(k) -
                                    ((volume[i] - rem_at[i][j] - earlier_ordered) / m).pow(k);
            telescoped += charge;
            charged[j] += charge;
        }
        report.add(rec("charge-telescoping", cs[i], i, telescoped, (volume[i] / m).pow(k), Relation::Equal));
    }
    for (const Job& job : inst.jobs)
        report.add(rec("charge-per-job", co[job.id], job.id, charged[job.id],
                       ((one + eps) * (co[job.id] - job.release)).pow(k)));
    return report;
}

}  // namespace srptlab
