#include "srptlab/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "srptlab/engine.hpp"
#include "srptlab/experiments.hpp"

namespace srptlab {

namespace {

std::string read_file(const std::string& path, const char* what)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(std::string("cannot read ") + what + ": " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write output: " + path);
    out << content;
}

// Text format, or instance JSON when the file starts with '{'.
Instance load_instance(const std::string& path)
{
    const std::string text = read_file(path, "instance");
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return instance_from_json(Json::parse(text));
        } catch (const nlohmann::json::parse_error& e) {
            throw InputError(std::string("malformed instance JSON: ") + e.what());
        }
    }
    return parse_instance(text);
}

IntRange parse_range(const std::string& s)
{
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            const std::int64_t v = std::stoll(s);
            return {v, v};
        }
        return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw InputError("bad range '" + s + "' (expected lo:hi)");
    }
}

std::vector<unsigned> parse_ks(const std::string& s)
{
    std::vector<unsigned> ks;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            const long v = std::stol(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            if (v <= 0) throw DomainError("k must be a positive integer, got " + item);
            ks.push_back(static_cast<unsigned>(v));
        } catch (const std::logic_error&) {
            throw InputError("bad k list '" + s + "'");
        }
    }
    if (ks.empty()) throw InputError("empty k list");
    return ks;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> items;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) items.push_back(item);
    return items;
}

SpeedConfig parse_speed(const std::string& s)
{
    Rational v;
    try {
        v = Rational::parse(s);
    } catch (const std::invalid_argument& e) {
        throw InputError("bad speed '" + s + "'");
    }
    return SpeedConfig::from_speed(v);
}

struct GenFlags {
    std::string family = "uniform";
    std::size_t n = 6;
    int machines = 1;
    std::uint64_t seed = 0;
    std::string sizes = "1:5";
    std::string releases = "0:10";

    void attach(CLI::App* app)
    {
        app->add_option("--family", family, "uniform | bursty | starvation-stream | heavy-tail-discrete");
        app->add_option("--n", n, "number of jobs");
        app->add_option("--m", machines, "number of machines");
        app->add_option("--seed", seed, "generator seed");
        app->add_option("--sizes", sizes, "size range lo:hi");
        app->add_option("--releases", releases, "release range lo:hi");
    }

    GenSpec spec() const
    {
        GenSpec g;
        g.family = family_from_string(family);
        g.n = n;
        g.machines = machines;
        g.seed = seed;
        g.size_range = parse_range(sizes);
        g.release_range = parse_range(releases);
        return g;
    }
};

void print_flow_table(std::ostream& out, const ExecutionTrace& trace, const FlowSummary& flows)
{
    out << "speed " << trace.speed.speed.short_str() << ", m = " << trace.instance.machines << ", n = "
        << trace.instance.size() << "\n\n";
    out << std::left << std::setw(6) << "job" << std::setw(12) << "release" << std::setw(12) << "size" << std::setw(16)
        << "completion" << "flow\n";
    for (JobId id = 0; id < trace.instance.size(); ++id) {
        const Job& job = trace.instance.job(id);
        out << std::setw(6) << id << std::setw(12) << job.release.short_str() << std::setw(12) << job.size.short_str()
            << std::setw(16) << trace.completions[id].short_str() << flows.per_job_flow[id].short_str() << '\n';
    }
    out << "\ntotal flow " << flows.total_flow.short_str() << '\n';
    for (const auto& [k, v] : flows.kth_power_flow)
        out << "k=" << k << "  power flow " << v.short_str() << "  l_k norm " << flows.lk_norm.at(k) << '\n';
}

int cmd_simulate(const std::string& instance_path, const std::string& speed_text, const std::string& out_path,
                 std::ostream& out)
{
    const Instance inst = load_instance(instance_path);
    const ExecutionTrace trace = simulate_srpt(inst, parse_speed(speed_text));
    const FlowSummary flows = objectives(trace, {1, 2, 3});
    print_flow_table(out, trace, flows);
    if (!out_path.empty()) write_file(out_path, to_json(trace).dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const VerifyRequest& request, const std::string& label, const std::string& out_path,
               const std::string& format, std::ostream& out, std::ostream& err)
{
    const VerifyOutcome outcome = run_verification(request);
    for (const std::string& n : outcome.notices) err << "notice: " << n << '\n';

    out << std::left << std::setw(12) << "reference" << std::setw(13) << "check" << std::setw(8) << "k" << std::setw(8)
        << "verdict" << "worst_slack\n";
    for (const VerifyRow& r : outcome.rows)
        out << std::setw(12) << r.reference << std::setw(13) << r.check << std::setw(8) << r.ks << std::setw(8)
            << (r.pass ? "pass" : "fail") << (r.worst_slack ? r.worst_slack->short_str() : "-") << '\n';

    if (!out_path.empty())
        write_file(out_path, format == "csv" ? verify_csv(outcome, label) : to_json(outcome).dump(2) + "\n");

    if (outcome.pass()) return kExitOk;
    err << "verification failed:\n";
    for (const PotentialReport& r : outcome.reports) {
        if (r.verdict) continue;
        err << "  " << r.check << " (reference " << r.reference << ", k=" << r.k << ")\n";
        for (const CheckRecord& w : r.witnesses()) {
            err << "    " << w.label << " t=" << w.time.short_str();
            if (w.job) err << " job=" << *w.job;
            if (w.other) err << " other=" << *w.other;
            err << " value=" << w.value.short_str() << (w.relation == Relation::Equal ? " expected " : " bound ")
                << w.bound.short_str() << '\n';
        }
    }
    return kExitCheckFailed;
}

int cmd_sweep(const std::string& manifest_path, const std::string& out_path, const std::string& format,
              std::ostream& out, std::ostream& err)
{
    Json j;
    try {
        j = Json::parse(read_file(manifest_path, "manifest"));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed manifest: ") + e.what());
    }
    const SweepManifest manifest = manifest_from_json(j);
    const SweepResult result = run_sweep(manifest, worker_count());
    const std::string artifact = format == "json" ? to_json(result).dump(2) + "\n" : sweep_csv(result);
    for (const std::string& n : result.notices) err << "notice: " << n << '\n';
    if (out_path.empty()) {
        out << artifact;
        err << sweep_summary(result);
    } else {
        write_file(out_path, artifact);
        out << sweep_summary(result);
    }
    if (result.all_within_bound()) return kExitOk;
    err << "bound violated:\n";
    for (const RatioReport& r : result.rows)
        if (!r.within_bound)
            err << "  " << to_string(r.family) << " seed=" << r.seed << " m=" << r.machines << " eps="
                << r.eps.short_str() << " k=" << r.k << " srpt=" << r.srpt_objective.short_str()
                << " oracle=" << r.oracle_objective.short_str() << '\n';
    return kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact-rational SRPT simulator and potential-function checker"};
    app.require_subcommand(1);

    std::string instance_path, speed_text = "1", out_path, format, ks_text = "1", refs_text = "oracle,unit-srpt",
                                manifest_path;
    bool inject_fault = false;
    GenFlags gen_flags;

    CLI::App* simulate = app.add_subcommand("simulate", "run SRPT on an instance");
    simulate->add_option("--instance", instance_path, "instance file")->required();
    simulate->add_option("--speed", speed_text, "machine speed A/B");
    simulate->add_option("--out", out_path, "write the trace JSON here");

    CLI::App* verify = app.add_subcommand("verify", "check potential-function conditions");
    verify->add_option("--instance", instance_path, "instance file (otherwise generated from the flags below)");
    verify->add_option("--speed", speed_text, "machine speed A/B");
    verify->add_option("--k", ks_text, "comma-separated k list");
    verify->add_option("--refs", refs_text, "oracle,unit-srpt,fifo");
    verify->add_option("--out", out_path, "write the report here");
    verify->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    verify->add_flag("--inject-fault", inject_fault)->group("");
    gen_flags.attach(verify);

    CLI::App* sweep = app.add_subcommand("sweep", "competitive-ratio sweep from a manifest");
    sweep->add_option("--manifest", manifest_path, "manifest JSON")->required();
    sweep->add_option("--out", out_path, "write the table here");
    sweep->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    CLI::App* gen = app.add_subcommand("gen", "generate an instance");
    gen_flags.attach(gen);
    gen->add_option("--out", out_path, "write the instance here");
    gen->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        err << e2.str() << o.str();
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(instance_path, speed_text, out_path, out);
        if (verify->parsed()) {
            VerifyRequest req;
            req.instance = instance_path.empty() ? generate(gen_flags.spec()) : load_instance(instance_path);
            req.speed = parse_speed(speed_text);
            req.ks = parse_ks(ks_text);
            req.references = split_list(refs_text);
            req.corrupt_reference = inject_fault;
            const std::string label = instance_path.empty()
                                          ? gen_flags.family + "-seed" + std::to_string(gen_flags.seed)
                                          : instance_path;
            return cmd_verify(req, label, out_path, format.empty() ? "json" : format, out, err);
        }
        if (sweep->parsed()) return cmd_sweep(manifest_path, out_path, format.empty() ? "csv" : format, out, err);
        if (gen->parsed()) {
            const GenSpec spec = gen_flags.spec();
            const Instance inst = generate(spec);
            const std::string text = format == "json" ? to_json(inst).dump(2) + "\n" : serialize_instance(inst);
            if (out_path.empty())
                out << text;
            else
                write_file(out_path, text);
            return kExitOk;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const OracleLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}

}  // namespace srptlab
