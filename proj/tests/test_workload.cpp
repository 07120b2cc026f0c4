#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "srptlab/workload.hpp"

using namespace srptlab;

TEST_CASE("xorshift64* reference outputs")
{
    // Produced by a separate implementation of the documented update equations.
    Xorshift64Star a(0);
    CHECK(a.next() == 0x7bbcb40d550682d0ULL);
    CHECK(a.next() == 0xde7fe413d00cc9fdULL);
    CHECK(a.next() == 0xb3c638353c668c91ULL);
    Xorshift64Star b(42);
    CHECK(b.next() == 0x31b0ece7c4f697a2ULL);
    CHECK(b.next() == 0x9008a3b1cb686f03ULL);
    CHECK(b.next() == 0x7c7173abd97be16fULL);
}

TEST_CASE("uniform family reference instance")
{
    GenSpec spec;
    spec.n = 5;
    spec.machines = 2;
    spec.seed = 7;
    const Instance inst = generate(spec);
    CHECK(inst.machines == 2);
    const std::vector<std::pair<long, long>> expected{{0, 2}, {1, 3}, {4, 5}, {6, 2}, {10, 5}};
    REQUIRE(inst.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(inst.job(i).release == Rational(expected[i].first));
        CHECK(inst.job(i).size == Rational(expected[i].second));
    }
}

TEST_CASE("bounded draws stay in range and cover it")
{
    Xorshift64Star rng(3);
    std::map<std::int64_t, int> seen;
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t v = rng.uniform(-2, 4);
        CHECK(v >= -2);
        CHECK(v <= 4);
        ++seen[v];
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("families respect their ranges and are deterministic")
{
    for (Family f : {Family::Uniform, Family::Bursty, Family::HeavyTailDiscrete}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            GenSpec spec;
            spec.family = f;
            spec.n = 9;
            spec.machines = 3;
            spec.size_range = {1, 8};
            spec.release_range = {2, 12};
            spec.seed = seed;
            const Instance inst = generate(spec);
            CHECK(inst == generate(spec));
            CHECK(inst.size() == 9);
            for (const Job& j : inst.jobs) {
                CHECK(j.size >= Rational(1));
                CHECK(j.size <= Rational(8));
                CHECK(j.release >= Rational(2));
                CHECK(j.release <= Rational(12));
                CHECK(j.size.is_integer());
                if (f == Family::HeavyTailDiscrete) {
                    const std::int64_t p = j.size.to_int64();
                    CHECK((p & (p - 1)) == 0);
                }
            }
            if (f == Family::Bursty) {
                std::map<Rational, int> instants;
                for (const Job& j : inst.jobs) ++instants[j.release];
                CHECK(instants.size() <= 3);
            }
        }
    }
}

TEST_CASE("heavy-tail sizes favour small powers")
{
    std::map<std::int64_t, int> counts;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        GenSpec spec;
        spec.family = Family::HeavyTailDiscrete;
        spec.n = 10;
        spec.size_range = {1, 8};
        spec.seed = seed;
        for (const Job& j : generate(spec).jobs) ++counts[j.size.to_int64()];
    }
    CHECK(counts[1] > counts[2]);
    CHECK(counts[2] > counts[4]);
    CHECK(counts[4] > counts[8]);
}

TEST_CASE("starvation stream shape")
{
    GenSpec spec;
    spec.family = Family::StarvationStream;
    spec.n = 5;
    spec.machines = 3;
    const Instance inst = generate(spec);
    CHECK(inst.machines == 1);
    CHECK(inst == testing::make_instance(1, {{0, 1}, {0, 1}, {1, 1}, {2, 1}, {3, 1}}));
}

TEST_CASE("generator input errors")
{
    GenSpec spec;
    spec.n = 3;
    spec.machines = 0;
    CHECK_THROWS_AS(generate(spec), InputError);
    spec.machines = 1;
    spec.size_range = {0, 3};
    CHECK_THROWS_AS(generate(spec), InputError);
    spec.size_range = {4, 2};
    CHECK_THROWS_AS(generate(spec), InputError);
    spec.size_range = {3, 3};
    spec.family = Family::HeavyTailDiscrete;
    CHECK_THROWS_AS(generate(spec), InputError);
    CHECK_THROWS_AS(family_from_string("poisson"), InputError);
    CHECK(family_from_string("heavy-tail-discrete") == Family::HeavyTailDiscrete);
    CHECK(to_string(Family::StarvationStream) == "starvation-stream");
}

TEST_CASE("instance text parsing")
{
    const Instance inst = parse_instance("# worked example\nm 2\njob 0 0 3\njob 1 0 1   # short\n\njob 2 1/2 5/4\n");
    CHECK(inst.machines == 2);
    CHECK(inst.job(2).release == Rational(1, 2));
    CHECK(inst.job(2).size == Rational(5, 4));

    auto message = [](const std::string& text) {
        try {
            parse_instance(text);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("job 0 0 1\n") == "missing 'm <machines>' line");
    CHECK(message("m 0\n") == "line 1: machines must be >= 1");
    CHECK(message("m 1\njob 0 0 x\n").rfind("line 2: ", 0) == 0);
    CHECK(message("m 1\nfoo\n") == "line 2: unknown directive 'foo'");
    CHECK(message("m 1\nm 2\n") == "line 2: duplicate machine line");
    CHECK(!message("m 1\njob 0 0 0\n").empty());
    CHECK(!message("m 1\njob 0 0 1\njob 0 1 1\n").empty());
}

TEST_CASE("instance text round trip (randomized)")
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Xorshift64Star rng(seed);
        Instance inst;
        inst.machines = static_cast<int>(rng.uniform(1, 4));
        const auto n = static_cast<std::size_t>(rng.uniform(0, 8));
        for (std::size_t i = 0; i < n; ++i)
            inst.jobs.push_back({i, Rational(rng.uniform(0, 20), rng.uniform(1, 6)),
                                 Rational(rng.uniform(1, 20), rng.uniform(1, 6))});
        inst = validate_instance(inst);
        CHECK(parse_instance(serialize_instance(inst)) == inst);
    }
}
