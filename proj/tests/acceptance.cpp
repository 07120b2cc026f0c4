// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Artifacts land in ./acceptance_artifacts (relative to the working directory).

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "srptlab/analysis.hpp"
#include "srptlab/engine.hpp"
#include "srptlab/experiments.hpp"
#include "srptlab/oracle.hpp"
#include "srptlab/workload.hpp"

using namespace srptlab;

namespace {

constexpr std::uint64_t kInstances = 500;
constexpr std::uint64_t kSweepSeeds = 100;

struct Tally {
    std::size_t reports = 0;
    std::size_t failed_reports = 0;
    std::map<std::string, std::size_t> records;  // by label
    std::vector<std::string> witnesses;

    void absorb(const PotentialReport& r, const std::string& where)
    {
        ++reports;
        for (const CheckRecord& rec : r.records) ++records[rec.label];
        if (r.verdict) return;
        ++failed_reports;
        if (witnesses.size() < 5)
            for (const CheckRecord& w : r.witnesses())
                witnesses.push_back(where + " " + r.check + " " + w.label + " t=" + w.time.short_str() + " value=" +
                                    w.value.short_str() + " bound=" + w.bound.short_str());
    }

    std::string counts(std::initializer_list<const char*> labels) const
    {
        std::ostringstream s;
        for (const char* l : labels) {
            const auto it = records.find(l);
            s << ' ' << l << '=' << (it == records.end() ? 0 : it->second);
        }
        return s.str();
    }
};

// Instance for the shared suite of criteria 2 to 5.
Instance suite_instance(std::uint64_t seed)
{
    static const Family families[] = {Family::Uniform, Family::Bursty, Family::HeavyTailDiscrete, Family::Uniform,
                                      Family::StarvationStream};
    GenSpec spec;
    spec.family = families[seed % 5];
    spec.machines = 1 + static_cast<int>(seed % 3);
    spec.n = 3 + static_cast<std::size_t>((seed / 3) % 5);
    spec.size_range = {1, 5};
    spec.release_range = {0, 10};
    spec.seed = 1000 + seed;
    return generate(spec);
}

struct SuiteOutput {
    Tally status, avg, lk, charge;
    Tally charge_other;  // non-oracle references, reported only
    std::size_t speed_pairs = 0;
    std::size_t slower_when_faster = 0;
    std::string artifact;
};

std::string report_line(const std::string& label, const PotentialReport& r)
{
    std::ostringstream s;
    s << label << ',' << r.check << ',' << r.epsilon.short_str() << ',' << r.k << ',' << r.reference << ','
      << r.n_records << ',' << (r.worst_slack ? r.worst_slack->str() : "") << ',' << (r.verdict ? "pass" : "fail")
      << '\n';
    return s.str();
}

SuiteOutput run_suite()
{
    SuiteOutput out;
    std::ostringstream artifact;
    artifact << "instance,check,eps,k,reference,n_records,worst_slack,verdict\n";
    const CheckOptions keep{true};

    for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
        const Instance inst = suite_instance(seed);
        const std::string label = "suite-" + std::to_string(seed);

        std::map<unsigned, ExecutionTrace> oracle;
        for (unsigned k : {1U, 2U, 3U}) oracle[k] = brute_force_opt(inst, k).trace;
        const ExecutionTrace unit_srpt = simulate_srpt(inst, SpeedConfig::unit());
        const ExecutionTrace fifo = simulate_policy(inst, SpeedConfig::unit(), fifo_priority());
        auto reference = [&](const std::string& name, unsigned k) -> const ExecutionTrace& {
            if (name == "oracle") return oracle.at(k);
            return name == "unit-srpt" ? unit_srpt : fifo;
        };
        const std::vector<std::string> refs{"oracle", "unit-srpt", "fifo"};

        std::map<Rational, ExecutionTrace> srpt;
        for (const Rational& s : {Rational(1), Rational(5, 4), Rational(3, 2), Rational(2)})
            srpt[s] = simulate_srpt(inst, SpeedConfig::from_speed(s));

        // Criterion 2: speeds 1, 3/2, 2.
        for (const Rational& s : {Rational(1), Rational(3, 2), Rational(2)})
            for (const std::string& ref : refs) {
                const PairContext ctx(srpt.at(s), reference(ref, 1), 1, ref);
                const PotentialReport r = check_status_lemma(ctx, keep);
                out.status.absorb(r, label);
                artifact << report_line(label, r);
            }

        // Criterion 3: eps 1/4, 1/2, 1.
        for (const Rational& eps : {Rational(1, 4), Rational(1, 2), Rational(1)})
            for (const std::string& ref : refs) {
                const PairContext ctx(srpt.at(Rational(1) + eps), reference(ref, 1), 1, ref);
                const ConditionReports c = check_avg_conditions(ctx, keep);
                for (const PotentialReport* r : {&c.arrival, &c.completion, &c.running, &c.global}) {
                    out.avg.absorb(*r, label);
                    artifact << report_line(label, *r);
                }
            }

        // Criteria 4 and 5: eps 1/4, 1/2.
        for (const Rational& eps : {Rational(1, 4), Rational(1, 2)}) {
            for (unsigned k : {2U, 3U})
                for (const std::string& ref : refs) {
                    const PairContext ctx(srpt.at(Rational(1) + eps), reference(ref, k), k, ref);
                    const ConditionReports c = check_lk_conditions(ctx, keep);
                    for (const PotentialReport* r : {&c.arrival, &c.completion, &c.running, &c.global}) {
                        out.lk.absorb(*r, label);
                        artifact << report_line(label, *r);
                    }
                }
            for (unsigned k : {1U, 2U, 3U})
                for (const std::string& ref : refs) {
                    const PairContext ctx(srpt.at(Rational(1) + eps), reference(ref, k), k, ref);
                    const PotentialReport r = check_charge_lemma(ctx, keep);
                    (ref == "oracle" ? out.charge : out.charge_other).absorb(r, label);
                    artifact << report_line(label, r);
                }
        }

        // Speed monotonicity of SRPT total flow: measured, not asserted.
        std::optional<Rational> previous;
        for (const auto& [speed, trace] : srpt) {
            const Rational flow = objectives(trace, {1}).total_flow;
            if (previous) {
                ++out.speed_pairs;
                if (flow > *previous) ++out.slower_when_faster;
            }
            previous = flow;
        }
    }
    out.artifact = artifact.str();
    return out;
}

struct SingleMachineOutput {
    std::size_t mismatches = 0;
    std::string artifact;
};

SingleMachineOutput run_single_machine()
{
    SingleMachineOutput out;
    std::ostringstream artifact;
    artifact << "seed,n,srpt_total_flow,oracle_total_flow\n";
    for (std::uint64_t seed = 0; seed < kInstances; ++seed) {
        GenSpec spec;
        spec.family = Family::Uniform;
        spec.machines = 1;
        spec.n = 1 + static_cast<std::size_t>(seed % 7);
        spec.size_range = {1, 5};
        spec.release_range = {0, 10};
        spec.seed = seed;
        const Instance inst = generate(spec);
        const Rational srpt = objectives(simulate_srpt(inst, SpeedConfig::unit()), {1}).total_flow;
        const Rational opt = brute_force_opt(inst, 1).objective;
        if (srpt != opt) ++out.mismatches;
        artifact << seed << ',' << spec.n << ',' << srpt.short_str() << ',' << opt.short_str() << '\n';
    }
    out.artifact = artifact.str();
    return out;
}

SweepManifest theorem_manifest(std::vector<Rational> eps, std::vector<unsigned> ks)
{
    SweepManifest m;
    m.families = {Family::Uniform, Family::Bursty, Family::HeavyTailDiscrete};
    m.seed_count = kSweepSeeds;
    m.n_range = {4, 7};
    m.eps = std::move(eps);
    m.machines = {1, 2, 3};
    m.ks = std::move(ks);
    return m;
}

SweepManifest one_competitive_manifest()
{
    SweepManifest m;
    m.families = {Family::Uniform, Family::Bursty, Family::HeavyTailDiscrete};
    m.seed_count = kSweepSeeds;
    m.n_range = {4, 7};
    m.machines = {2, 3};
    m.mode = SweepMode::OneCompetitive;
    return m;
}

std::string max_ratio(const SweepResult& r)
{
    std::map<std::pair<Rational, unsigned>, Rational> worst;
    for (const RatioReport& row : r.rows) {
        if (row.oracle_objective == Rational(0)) continue;
        Rational& w = worst[{row.eps, row.k}];
        w = max(w, row.srpt_objective / row.oracle_objective);
    }
    std::ostringstream s;
    for (const auto& [key, w] : worst)
        s << " [eps=" << key.first.short_str() << " k=" << key.second << " max_ratio=" << w.decimal(6) << ']';
    return s.str();
}

std::size_t violations(const SweepResult& r)
{
    std::size_t v = 0;
    for (const RatioReport& row : r.rows) v += row.within_bound ? 0 : 1;
    return v;
}

class Timer {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt_seconds(double s)
{
    std::ostringstream o;
    o.precision(2);
    o << std::fixed << s << "s";
    return o.str();
}

bool line(int id, bool pass, const std::string& title, const std::string& detail, double secs,
          const std::vector<std::string>& witnesses = {})
{
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << title << " --" << detail << " ("
              << fmt_seconds(secs) << ")\n";
    for (const std::string& w : witnesses) std::cout << "    witness: " << w << '\n';
    std::cout.flush();
    return pass;
}

void write_artifact(const std::filesystem::path& dir, const std::string& name, const std::string& content)
{
    std::ofstream(dir / name, std::ios::binary) << content;
}

}  // namespace

int main()
{
    const std::filesystem::path dir = "acceptance_artifacts";
    std::filesystem::create_directories(dir);
    bool all = true;
    std::map<std::string, std::string> artifacts;

    {
        Timer t;
        const SingleMachineOutput c1 = run_single_machine();
        artifacts["c1_single_machine.csv"] = c1.artifact;
        all &= line(1, c1.mismatches == 0, "single-machine SRPT equals the oracle optimum",
                    " " + std::to_string(kInstances - c1.mismatches) + "/" + std::to_string(kInstances) + " exact matches",
                    t.seconds());
    }

    {
        Timer t;
        const SuiteOutput s = run_suite();
        const double secs = t.seconds();
        artifacts["c2_to_c5_checks.csv"] = s.artifact;
        auto detail = [](const Tally& x, std::initializer_list<const char*> labels) {
            return " reports=" + std::to_string(x.reports) + " failed=" + std::to_string(x.failed_reports) +
                   x.counts(labels);
        };
        all &= line(2, s.status.failed_reports == 0 && s.status.reports > 0,
                    "volume gap R - V <= m p_i and capped volume identity",
                    detail(s.status, {"volume-gap", "capped-identity"}), secs, s.status.witnesses);
        all &= line(3, s.avg.failed_reports == 0 && s.avg.reports > 0, "average-flow potential conditions",
                    detail(s.avg, {"arrival-new-term", "completion-charge", "running-delta", "phi-start", "phi-end"}),
                    secs, s.avg.witnesses);
        all &= line(4, s.lk.failed_reports == 0 && s.lk.reports > 0, "k-th power potential conditions",
                    detail(s.lk, {"arrival-new-term", "completion-small-volume", "completion-large-volume",
                                  "running-delta"}),
                    secs, s.lk.witnesses);
        all &= line(5, s.charge.failed_reports == 0 && s.charge.reports > 0, "charge lemma against the oracle",
                    detail(s.charge, {"charge-sum", "work-leq", "work-leq-full-size"}), secs, s.charge.witnesses);
        std::cout << "    not gating: charge lemma against unit-srpt and fifo --"
                  << detail(s.charge_other, {"charge-sum", "work-leq"}) << '\n';
        std::cout << "    finding: SRPT total flow increased with speed in " << s.slower_when_faster << " of "
                  << s.speed_pairs << " consecutive speed pairs (1, 5/4, 3/2, 2)\n";
        for (const std::string& w : s.charge_other.witnesses) std::cout << "    not gating witness: " << w << '\n';
    }

    const unsigned threads = worker_count();
    {
        Timer t;
        const SweepResult r = run_sweep(theorem_manifest({Rational(1, 4), Rational(1, 2), Rational(1)}, {1}), threads);
        artifacts["c6_sweep.csv"] = sweep_csv(r);
        artifacts["c6_sweep.json"] = to_json(r).dump(2);
        all &= line(6, violations(r) == 0 && !r.rows.empty(), "total flow within 4/eps of the oracle",
                    " cells=" + std::to_string(r.rows.size()) + " violations=" + std::to_string(violations(r)) +
                        max_ratio(r),
                    t.seconds());
    }
    {
        Timer t;
        const SweepResult r = run_sweep(theorem_manifest({Rational(1, 4), Rational(1, 2)}, {2, 3}), threads);
        artifacts["c7_sweep.csv"] = sweep_csv(r);
        artifacts["c7_sweep.json"] = to_json(r).dump(2);
        all &= line(7, violations(r) == 0 && !r.rows.empty(), "k-th power flow within the pre-root bound",
                    " cells=" + std::to_string(r.rows.size()) + " violations=" + std::to_string(violations(r)) +
                        max_ratio(r),
                    t.seconds());
    }
    {
        Timer t;
        const SweepResult r = run_sweep(one_competitive_manifest(), threads);
        artifacts["c8_one_competitive.csv"] = sweep_csv(r);
        all &= line(8, violations(r) == 0 && !r.rows.empty(), "speed 2 - 1/m total flow at most the oracle",
                    " cells=" + std::to_string(r.rows.size()) + " violations=" + std::to_string(violations(r)) +
                        max_ratio(r),
                    t.seconds());
    }

    {
        // Second full pass, sweeps on a different worker count.
        Timer t;
        std::map<std::string, std::string> again;
        again["c1_single_machine.csv"] = run_single_machine().artifact;
        again["c2_to_c5_checks.csv"] = run_suite().artifact;
        const unsigned other = threads == 1 ? 3 : 1;
        SweepResult r = run_sweep(theorem_manifest({Rational(1, 4), Rational(1, 2), Rational(1)}, {1}), other);
        again["c6_sweep.csv"] = sweep_csv(r);
        again["c6_sweep.json"] = to_json(r).dump(2);
        r = run_sweep(theorem_manifest({Rational(1, 4), Rational(1, 2)}, {2, 3}), other);
        again["c7_sweep.csv"] = sweep_csv(r);
        again["c7_sweep.json"] = to_json(r).dump(2);
        again["c8_one_competitive.csv"] = sweep_csv(run_sweep(one_competitive_manifest(), other));
        std::vector<std::string> differing;
        for (const auto& [name, content] : artifacts)
            if (again[name] != content) differing.push_back(name);
        for (const auto& [name, content] : artifacts) write_artifact(dir, name, content);
        all &= line(9, differing.empty(), "byte-identical artifacts on a repeated run",
                    " artifacts=" + std::to_string(artifacts.size()) + " differing=" + std::to_string(differing.size()),
                    t.seconds(), differing);
    }

    std::cout << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
    return all ? 0 : 1;
}
