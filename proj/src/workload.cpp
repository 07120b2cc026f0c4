#include "srptlab/workload.hpp"

#include <algorithm>
#include <sstream>

namespace srptlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

void check_range(const IntRange& r, std::int64_t min_lo, const char* what)
{
    if (r.lo > r.hi) throw InputError(std::string("invalid ") + what + " range: lo > hi");
    if (r.lo < min_lo) throw InputError(std::string("invalid ") + what + " range: lo < " + std::to_string(min_lo));
}

struct Draft {
    std::int64_t release;
    std::int64_t size;
};

Instance finish(std::vector<Draft> drafts, int machines)
{
    std::stable_sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) { return a.release < b.release; });
    Instance inst;
    inst.machines = machines;
    for (std::size_t i = 0; i < drafts.size(); ++i)
        inst.jobs.push_back(Job{i, Rational(static_cast<long>(drafts[i].release)), Rational(static_cast<long>(drafts[i].size))});
    return validate_instance(std::move(inst));
}

}  // namespace

Xorshift64Star::Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed))
{
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next()
{
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

std::int64_t Xorshift64Star::uniform(std::int64_t lo, std::int64_t hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<std::int64_t>(x % span);
}

std::string to_string(Family f)
{
    switch (f) {
    case Family::Uniform: return "uniform";
    case Family::Bursty: return "bursty";
    case Family::StarvationStream: return "starvation-stream";
    case Family::HeavyTailDiscrete: return "heavy-tail-discrete";
    }
    return "unknown";
}

Family family_from_string(std::string_view name)
{
    for (Family f : {Family::Uniform, Family::Bursty, Family::StarvationStream, Family::HeavyTailDiscrete})
        if (to_string(f) == name) return f;
    throw InputError("unknown workload family '" + std::string(name) + "'");
}

Instance generate(const GenSpec& spec)
{
    if (spec.machines < 1) throw InputError("machines must be >= 1");
    std::vector<Draft> drafts;
    drafts.reserve(spec.n);

    if (spec.family == Family::StarvationStream) {
        // Two unit jobs at 0, then one unit job per time step; always one machine.
        for (std::size_t i = 0; i < spec.n; ++i)
            drafts.push_back({i < 2 ? 0 : static_cast<std::int64_t>(i - 1), 1});
        return finish(std::move(drafts), 1);
    }

    check_range(spec.size_range, 1, "size");
    check_range(spec.release_range, 0, "release");
    Xorshift64Star rng(spec.seed);

    switch (spec.family) {
    case Family::Uniform:
        for (std::size_t i = 0; i < spec.n; ++i) {
            const std::int64_t r = rng.uniform(spec.release_range.lo, spec.release_range.hi);
            const std::int64_t p = rng.uniform(spec.size_range.lo, spec.size_range.hi);
            drafts.push_back({r, p});
        }
        break;
    case Family::Bursty: {
        // One to three burst instants; each job joins one of them.
        const std::int64_t bursts = rng.uniform(1, 3);
        std::vector<std::int64_t> instants;
        for (std::int64_t b = 0; b < bursts; ++b)
            instants.push_back(rng.uniform(spec.release_range.lo, spec.release_range.hi));
        for (std::size_t i = 0; i < spec.n; ++i) {
            const std::int64_t r = instants[static_cast<std::size_t>(rng.uniform(0, bursts - 1))];
            const std::int64_t p = rng.uniform(spec.size_range.lo, spec.size_range.hi);
            drafts.push_back({r, p});
        }
        break;
    }
    case Family::HeavyTailDiscrete: {
        // Sizes 2^j within the size range, P(2^j) proportional to 2^-j.
        std::vector<std::int64_t> sizes;
        for (std::int64_t s = 1; s <= spec.size_range.hi; s *= 2)
            if (s >= spec.size_range.lo) sizes.push_back(s);
        if (sizes.empty()) throw InputError("size range contains no power of two");
        const std::int64_t total_weight = (std::int64_t{1} << sizes.size()) - 1;
        for (std::size_t i = 0; i < spec.n; ++i) {
            const std::int64_t r = rng.uniform(spec.release_range.lo, spec.release_range.hi);
            std::int64_t ticket = rng.uniform(1, total_weight);
            std::size_t j = 0;
            std::int64_t weight = std::int64_t{1} << (sizes.size() - 1);
            while (ticket > weight && j + 1 < sizes.size()) {
                ticket -= weight;
                weight /= 2;
                ++j;
            }
            drafts.push_back({r, sizes[j]});
        }
        break;
    }
    case Family::StarvationStream: break;
    }
    return finish(std::move(drafts), spec.machines);
}

Instance parse_instance(std::string_view text)
{
    Instance inst;
    bool have_machines = false;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    auto fail = [&](const std::string& msg) -> InputError {
        return InputError("line " + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        std::vector<std::string> args;
        for (std::string a; ls >> a;) args.push_back(a);
        if (word == "m") {
            if (have_machines) throw fail("duplicate machine line");
            if (args.size() != 1) throw fail("expected 'm <machines>'");
            long m = 0;
            try {
                std::size_t used = 0;
                m = std::stol(args[0], &used);
                if (used != args[0].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw fail("malformed machine count '" + args[0] + "'");
            }
            if (m < 1) throw fail("machines must be >= 1");
            inst.machines = static_cast<int>(m);
            have_machines = true;
        } else if (word == "job") {
            if (args.size() != 3) throw fail("expected 'job <id> <release> <size>'");
            Job job;
            try {
                std::size_t used = 0;
                const long id = std::stol(args[0], &used);
                if (used != args[0].size() || id < 0) throw std::invalid_argument("id");
                job.id = static_cast<JobId>(id);
                job.release = Rational::parse(args[1]);
                job.size = Rational::parse(args[2]);
            } catch (const std::exception& e) {
                throw fail(std::string("malformed job line: ") + e.what());
            }
            inst.jobs.push_back(std::move(job));
        } else {
            throw fail("unknown directive '" + word + "'");
        }
    }
    if (!have_machines) throw InputError("missing 'm <machines>' line");
    return validate_instance(std::move(inst));
}

std::string serialize_instance(const Instance& instance)
{
    std::ostringstream out;
    out << "m " << instance.machines << "\n";
    for (const Job& job : instance.jobs)
        out << "job " << job.id << " " << job.release.short_str() << " " << job.size.short_str() << "\n";
    return out.str();
}

}  // namespace srptlab
