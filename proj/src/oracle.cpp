#include "srptlab/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "srptlab/engine.hpp"

namespace srptlab {

namespace {

// Packed search state: time in the low 16 bits, then up to 11 alive entries of
// 10 bits each, (release class << 6 | remaining), in canonical sorted order.
struct StateKey {
    unsigned __int128 bits = 0;
    friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const noexcept
    {
        const auto lo = static_cast<std::uint64_t>(k.bits);
        const auto hi = static_cast<std::uint64_t>(k.bits >> 64);
        std::uint64_t h = lo * 0x9E3779B97F4A7C15ULL;
        h ^= hi + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

constexpr std::size_t kMaxEntries = 11;
constexpr int kMaxRemaining = 63;
constexpr int kMaxReleaseClasses = 16;
constexpr std::int64_t kMaxTime = 65535;

struct Entry {
    int release_class;
    int remaining;
    friend auto operator<=>(const Entry&, const Entry&) = default;
};

struct Memo {
    std::uint64_t cost;
    std::uint32_t mask;
};

class SlotSearch {
public:
    SlotSearch(std::vector<std::int64_t> release_of_class, std::vector<Entry> arrivals_sorted,
               std::vector<std::int64_t> arrival_time, int machines, unsigned k)
        : release_of_class_(std::move(release_of_class)),
          arrivals_(std::move(arrivals_sorted)),
          arrival_time_(std::move(arrival_time)),
          machines_(machines),
          k_(k)
    {
    }

    // Cost-to-go from time t with the given alive entries (all releases <= t admitted,
    // `next_arrival` indexes the first job not yet admitted).
    std::uint64_t solve(std::int64_t t, const std::vector<Entry>& alive, std::size_t next_arrival)
    {
        if (alive.empty()) {
            if (next_arrival == arrivals_.size()) return 0;
            std::vector<Entry> admitted;
            const std::int64_t t2 = arrival_time_[next_arrival];
            while (next_arrival < arrivals_.size() && arrival_time_[next_arrival] == t2)
                admitted.push_back(arrivals_[next_arrival++]);
            std::sort(admitted.begin(), admitted.end());
            return solve(t2, admitted, next_arrival);
        }
        const StateKey key = encode(t, alive);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second.cost;

        const std::size_t run = std::min<std::size_t>(static_cast<std::size_t>(machines_), alive.size());
        std::uint64_t best = UINT64_MAX;
        std::uint32_t best_mask = 0;

        std::size_t after = next_arrival;
        std::vector<Entry> arriving;
        while (after < arrivals_.size() && arrival_time_[after] == t + 1) arriving.push_back(arrivals_[after++]);

        for_each_choice(alive, run, [&](std::uint32_t mask) {
            std::uint64_t cost = 0;
            std::vector<Entry> next;
            next.reserve(alive.size() + arriving.size());
            for (std::size_t i = 0; i < alive.size(); ++i) {
                Entry e = alive[i];
                if (mask & (1U << i)) {
                    if (--e.remaining == 0) {
                        cost += power(t + 1 - release_of_class_[static_cast<std::size_t>(e.release_class)]);
                        continue;
                    }
                }
                next.push_back(e);
            }
            next.insert(next.end(), arriving.begin(), arriving.end());
            std::sort(next.begin(), next.end());
            const std::uint64_t total = cost + solve(t + 1, next, after);
            if (total < best) {
                best = total;
                best_mask = mask;
            }
        });
        memo_.emplace(key, Memo{best, best_mask});
        return best;
    }

    std::uint32_t choice(std::int64_t t, const std::vector<Entry>& alive) const
    {
        return memo_.at(encode(t, alive)).mask;
    }

    std::size_t states() const { return memo_.size(); }

private:
    std::uint64_t power(std::int64_t flow) const
    {
        std::uint64_t r = 1;
        for (unsigned e = 0; e < k_; ++e) r *= static_cast<std::uint64_t>(flow);
        return r;
    }

    static StateKey encode(std::int64_t t, const std::vector<Entry>& alive)
    {
        StateKey key;
        key.bits = static_cast<unsigned __int128>(t);
        unsigned shift = 16;
        for (const Entry& e : alive) {
            key.bits |= static_cast<unsigned __int128>((e.release_class << 6) | e.remaining) << shift;
            shift += 10;
        }
        return key;
    }

    // Calls fn(mask) for every way to pick `count` entries, treating equal
    // entries as interchangeable (always the leftmost ones of a run).
    template <class Fn>
    void for_each_choice(const std::vector<Entry>& alive, std::size_t count, Fn&& fn) const
    {
        std::vector<std::pair<std::size_t, std::size_t>> groups;  // (first index, length)
        for (std::size_t i = 0; i < alive.size();) {
            std::size_t j = i;
            while (j < alive.size() && alive[j] == alive[i]) ++j;
            groups.emplace_back(i, j - i);
            i = j;
        }
        recurse(groups, 0, count, 0U, fn);
    }

    template <class Fn>
    void recurse(const std::vector<std::pair<std::size_t, std::size_t>>& groups, std::size_t g, std::size_t left,
                 std::uint32_t mask, Fn& fn) const
    {
        if (left == 0) {
            fn(mask);
            return;
        }
        if (g == groups.size()) return;
        std::size_t capacity = 0;
        for (std::size_t h = g; h < groups.size(); ++h) capacity += groups[h].second;
        if (capacity < left) return;
        const auto [first, len] = groups[g];
        for (std::size_t take = std::min(len, left) + 1; take-- > 0;) {
            std::uint32_t m2 = mask;
            for (std::size_t x = 0; x < take; ++x) m2 |= 1U << (first + x);
            recurse(groups, g + 1, left - take, m2, fn);
        }
    }

    std::vector<std::int64_t> release_of_class_;
    std::vector<Entry> arrivals_;
    std::vector<std::int64_t> arrival_time_;
    int machines_;
    unsigned k_;
    std::unordered_map<StateKey, Memo, StateKeyHash> memo_;
};

void check_limits(const Instance& instance, const OracleLimits& limits, unsigned k)
{
    if (k == 0) throw OracleLimitError("objective exponent k must be >= 1");
    if (instance.machines > limits.max_machines)
        throw OracleLimitError("oracle limit exceeded: machines " + std::to_string(instance.machines) + " > " +
                               std::to_string(limits.max_machines));
    if (instance.size() > std::min(limits.max_jobs, kMaxEntries))
        throw OracleLimitError("oracle limit exceeded: " + std::to_string(instance.size()) + " jobs");
    std::int64_t total = 0;
    std::int64_t last_release = 0;
    for (const Job& job : instance.jobs) {
        if (!job.release.is_integer() || !job.size.is_integer())
            throw OracleLimitError("oracle requires integral releases and sizes (job " + std::to_string(job.id) + ")");
        const std::int64_t p = job.size.to_int64();
        if (p > kMaxRemaining) throw OracleLimitError("oracle limit exceeded: job size " + std::to_string(p));
        total += p;
        last_release = std::max(last_release, job.release.to_int64());
    }
    if (total > limits.max_total_size)
        throw OracleLimitError("oracle limit exceeded: total size " + std::to_string(total) + " > " +
                               std::to_string(limits.max_total_size));
    const std::int64_t horizon = last_release + total;
    if (horizon >= kMaxTime) throw OracleLimitError("oracle limit exceeded: horizon " + std::to_string(horizon));
    long double bound = static_cast<long double>(instance.size());
    for (unsigned e = 0; e < k; ++e) bound *= static_cast<long double>(horizon);
    if (bound > 4.0e18L) throw OracleLimitError("oracle limit exceeded: objective overflows 64 bits");
}

}  // namespace

bool oracle_eligible(const Instance& instance, const OracleLimits& limits)
{
    try {
        check_limits(instance, limits, 1);
        return true;
    } catch (const OracleLimitError&) {
        return false;
    }
}

OracleResult brute_force_opt(const Instance& instance, unsigned k, const OracleLimits& limits)
{
    check_limits(instance, limits, k);
    const std::size_t n = instance.size();
    const auto m = static_cast<std::size_t>(instance.machines);

    std::vector<std::int64_t> release_of_class;
    for (const Job& job : instance.jobs) {
        const std::int64_t r = job.release.to_int64();
        if (release_of_class.empty() || release_of_class.back() != r) release_of_class.push_back(r);
    }
    if (release_of_class.size() > kMaxReleaseClasses)
        throw OracleLimitError("oracle limit exceeded: too many distinct release times");

    // Jobs are sorted by (release, id), so arrival order is instance order.
    std::vector<Entry> arrivals;
    std::vector<std::int64_t> arrival_time;
    std::vector<int> class_of_job(n);
    for (const Job& job : instance.jobs) {
        const std::int64_t r = job.release.to_int64();
        const auto cls = static_cast<int>(
            std::lower_bound(release_of_class.begin(), release_of_class.end(), r) - release_of_class.begin());
        class_of_job[job.id] = cls;
        arrivals.push_back({cls, static_cast<int>(job.size.to_int64())});
        arrival_time.push_back(r);
    }

    SlotSearch search(release_of_class, arrivals, arrival_time, instance.machines, k);
    const std::uint64_t best = search.solve(0, {}, 0);

    // Replay the memoized choices with concrete job ids. Alive jobs are kept in
    // canonical (release class, remaining, id) order so mask positions line up.
    struct Live {
        Entry entry;
        JobId id;
    };
    ExecutionTrace trace;
    trace.instance = instance;
    trace.speed = SpeedConfig::unit();

    std::vector<Live> alive;
    std::size_t next = 0;
    std::int64_t t = 0;
    std::vector<std::optional<JobId>> machine_of(m);
    auto push_segment = [&](std::int64_t start, std::int64_t end, const std::vector<std::optional<JobId>>& assignment) {
        if (!trace.segments.empty() && trace.segments.back().end == Rational(start) &&
            trace.segments.back().assignment == assignment) {
            trace.segments.back().end = Rational(end);
            return;
        }
        trace.segments.push_back(Segment{Rational(start), Rational(end), assignment});
    };
    auto admit_through = [&](std::int64_t time) {
        while (next < n && arrival_time[next] <= time) {
            alive.push_back({arrivals[next], instance.jobs[next].id});
            ++next;
        }
        std::sort(alive.begin(), alive.end(), [](const Live& a, const Live& b) {
            if (a.entry != b.entry) return a.entry < b.entry;
            return a.id < b.id;
        });
    };

    admit_through(0);
    while (!alive.empty() || next < n) {
        if (alive.empty()) {
            const std::int64_t t2 = arrival_time[next];
            push_segment(t, t2, std::vector<std::optional<JobId>>(m));
            t = t2;
            admit_through(t);
            continue;
        }
        std::vector<Entry> entries;
        for (const Live& l : alive) entries.push_back(l.entry);
        const std::uint32_t mask = search.choice(t, entries);

        std::vector<JobId> chosen;
        for (std::size_t i = 0; i < alive.size(); ++i)
            if (mask & (1U << i)) chosen.push_back(alive[i].id);
        // Keep continuing jobs on their machine; newcomers fill free machines in order.
        std::vector<std::optional<JobId>> assignment(m);
        std::vector<bool> placed(chosen.size(), false);
        for (std::size_t mc = 0; mc < m; ++mc) {
            if (!machine_of[mc]) continue;
            auto it = std::find(chosen.begin(), chosen.end(), *machine_of[mc]);
            if (it != chosen.end()) {
                assignment[mc] = *it;
                placed[static_cast<std::size_t>(it - chosen.begin())] = true;
            }
        }
        for (std::size_t c = 0; c < chosen.size(); ++c) {
            if (placed[c]) continue;
            for (std::size_t mc = 0; mc < m; ++mc)
                if (!assignment[mc]) {
                    assignment[mc] = chosen[c];
                    break;
                }
        }
        machine_of = assignment;
        push_segment(t, t + 1, assignment);

        std::vector<Live> remaining;
        for (std::size_t i = 0; i < alive.size(); ++i) {
            Live l = alive[i];
            if ((mask & (1U << i)) && --l.entry.remaining == 0) continue;
            remaining.push_back(l);
        }
        alive = std::move(remaining);
        ++t;
        admit_through(t);
    }
    finalize_trace(trace);

    OracleResult result;
    result.trace = std::move(trace);
    result.objective = Rational(static_cast<long>(best));
    result.k = k;
    result.states_explored = search.states();
    return result;
}

Rational single_machine_relaxation_lb(const Instance& instance)
{
    Instance single = instance;
    single.machines = 1;
    single = validate_instance(std::move(single));
    const ExecutionTrace trace = simulate_srpt(single, SpeedConfig::from_speed(Rational(instance.machines)));
    Rational total(0);
    for (const Job& job : single.jobs) total += trace.completions[job.id] - job.release;
    return total;
}

ReferenceSet reference_schedules(const Instance& instance, unsigned k, const OracleLimits& limits)
{
    ReferenceSet set;
    try {
        OracleResult opt = brute_force_opt(instance, k, limits);
        ExecutionTrace trace = opt.trace;
        set.schedules.push_back({"oracle", std::move(trace), std::move(opt)});
    } catch (const OracleLimitError& e) {
        set.notices.push_back(std::string("oracle omitted: ") + e.what());
    }
    set.schedules.push_back({"unit-srpt", simulate_srpt(instance, SpeedConfig::unit()), std::nullopt});
    set.schedules.push_back({"fifo", simulate_policy(instance, SpeedConfig::unit(), fifo_priority()), std::nullopt});
    return set;
}

}  // namespace srptlab
