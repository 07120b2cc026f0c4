#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "srptlab/analysis.hpp"
#include "srptlab/engine.hpp"

using namespace srptlab;
using testing::make_instance;

namespace {

// Independent reference: SRPT re-ranked every slot of length 1/a for speed a/b.
// With integral releases and sizes every event lands on a slot boundary, so
// counting work in units of 1/b and time in units of 1/a is exact.
std::vector<Rational> slot_srpt_completions(const Instance& inst, std::int64_t a, std::int64_t b)
{
    const std::size_t n = inst.size();
    std::vector<std::int64_t> release(n), rem(n);
    for (const Job& j : inst.jobs) {
        release[j.id] = j.release.to_int64() * a;
        rem[j.id] = j.size.to_int64() * b;
    }
    std::vector<std::int64_t> done(n, -1);
    std::size_t finished = 0;
    for (std::int64_t slot = 0; finished < n; ++slot) {
        std::vector<JobId> alive;
        for (JobId i = 0; i < n; ++i)
            if (release[i] <= slot && done[i] < 0) alive.push_back(i);
        std::sort(alive.begin(), alive.end(), [&](JobId x, JobId y) {
            return std::tie(rem[x], release[x], x) < std::tie(rem[y], release[y], y);
        });
        const std::size_t run = std::min(alive.size(), static_cast<std::size_t>(inst.machines));
        for (std::size_t q = 0; q < run; ++q) {
            const JobId i = alive[q];
            if (--rem[i] == 0) {
                done[i] = slot + 1;
                ++finished;
            }
        }
    }
    std::vector<Rational> out;
    for (std::int64_t d : done) out.emplace_back(d, a);
    return out;
}

}  // namespace

TEST_CASE("worked example at unit speed")
{
    const ExecutionTrace t = simulate_srpt(testing::e1(), SpeedConfig::unit());
    CHECK(t.completions == std::vector<Rational>{3, 1, 2});
    const FlowSummary f = objectives(t, {1, 2});
    CHECK(f.total_flow == Rational(5));
    CHECK(f.kth_power_flow.at(2) == Rational(11));
    CHECK(f.lk_norm.at(2) == "3.31662479036");
}

TEST_CASE("worked example at speed 3/2")
{
    const ExecutionTrace t = simulate_srpt(testing::e1(), SpeedConfig::from_speed(Rational(3, 2)));
    CHECK(t.completions == std::vector<Rational>{2, Rational(2, 3), Rational(5, 3)});
    CHECK(objectives(t, {1}).total_flow == Rational(10, 3));
    CHECK(validate_trace(t).ok);
}

TEST_CASE("running jobs fill machines in priority order")
{
    const ExecutionTrace t = simulate_srpt(testing::e1(), SpeedConfig::unit());
    REQUIRE(!t.segments.empty());
    CHECK(t.segments[0].start == Rational(0));
    CHECK(t.segments[0].assignment[0] == JobId{1});
    CHECK(t.segments[0].assignment[1] == JobId{0});
}

TEST_CASE("idle periods appear as idle segments")
{
    const Instance inst = make_instance(1, {{2, 1}});
    const ExecutionTrace t = simulate_srpt(inst, SpeedConfig::unit());
    REQUIRE(t.segments.size() == 2);
    CHECK(!t.segments[0].assignment[0].has_value());
    CHECK(t.completions[0] == Rational(3));
    CHECK(validate_trace(t).ok);
}

TEST_CASE("empty instance")
{
    const Instance inst = make_instance(2, {});
    const ExecutionTrace t = simulate_srpt(inst, SpeedConfig::unit());
    CHECK(t.segments.empty());
    CHECK(objectives(t, {1}).total_flow == Rational(0));
}

TEST_CASE("next event picks the earliest arrival or completion")
{
    SimState s;
    s.now = Rational(1);
    s.alive = {{0, Rational(3)}, {1, Rational(1, 2)}};
    s.running = {0, 1};
    s.pending = {{2, Rational(5, 4), Rational(1)}};
    CHECK(*next_event(s, SpeedConfig::from_speed(Rational(2))) == Rational(5, 4));
    s.pending.clear();
    CHECK(*next_event(s, SpeedConfig::from_speed(Rational(2))) == Rational(5, 4));
    CHECK(*next_event(s, SpeedConfig::unit()) == Rational(3, 2));
    s.alive.clear();
    s.running.clear();
    CHECK(!next_event(s, SpeedConfig::unit()).has_value());
}

TEST_CASE("agrees with a slot-by-slot simulation (randomized)")
{
    const std::vector<std::pair<std::int64_t, std::int64_t>> speeds{{1, 1}, {3, 2}, {2, 1}, {5, 4}};
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const Instance inst = testing::random_instance(seed, 8, 3);
        for (const auto& [a, b] : speeds) {
            CAPTURE(seed);
            CAPTURE(a);
            const ExecutionTrace t = simulate_srpt(inst, SpeedConfig::from_speed(Rational(a, b)));
            CHECK(t.completions == slot_srpt_completions(inst, a, b));
        }
    }
}

TEST_CASE("starvation stream: ties keep SRPT first-come, a late-first rule starves one job")
{
    GenSpec spec;
    spec.family = Family::StarvationStream;
    spec.n = 5;
    const Instance inst = generate(spec);
    const ExecutionTrace srpt = simulate_srpt(inst, SpeedConfig::unit());
    CHECK(srpt.completions == std::vector<Rational>{1, 2, 3, 4, 5});

    const Priority latest_first{"latest-first", [](const JobView& a, const JobView& b) {
                                    if (a.release != b.release) return a.release > b.release;
                                    return a.id < b.id;
                                }};
    const ExecutionTrace starved = simulate_policy(inst, SpeedConfig::unit(), latest_first);
    CHECK(starved.completions[1] == Rational(5));
    CHECK(validate_trace(starved).ok);
}

TEST_CASE("priority lookup")
{
    CHECK(priority_by_name("srpt").name == "srpt");
    CHECK(priority_by_name("fifo").name == "fifo");
    CHECK_THROWS_AS(priority_by_name("edf"), InputError);
}
