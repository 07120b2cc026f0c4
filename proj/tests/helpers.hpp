#pragma once

#include <utility>
#include <vector>

#include "srptlab/model.hpp"
#include "srptlab/workload.hpp"

namespace testing {

using srptlab::Instance;
using srptlab::Rational;

// Jobs given as (release, size); ids follow the list order.
inline Instance make_instance(int machines, const std::vector<std::pair<Rational, Rational>>& jobs)
{
    Instance inst;
    inst.machines = machines;
    for (std::size_t i = 0; i < jobs.size(); ++i) inst.jobs.push_back({i, jobs[i].first, jobs[i].second});
    return srptlab::validate_instance(std::move(inst));
}

inline Instance e1() { return make_instance(2, {{0, 3}, {0, 1}, {1, 1}}); }

// Small integral instance drawn from the uniform family.
inline Instance random_instance(std::uint64_t seed, std::size_t max_n, int max_m, std::int64_t max_size = 5,
                                std::int64_t max_release = 10)
{
    srptlab::Xorshift64Star rng(seed ^ 0xA5A5A5A5ULL);
    srptlab::GenSpec spec;
    spec.family = srptlab::Family::Uniform;
    spec.n = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(max_n)));
    spec.machines = static_cast<int>(rng.uniform(1, max_m));
    spec.size_range = {1, max_size};
    spec.release_range = {0, max_release};
    spec.seed = seed;
    return srptlab::generate(spec);
}

}  // namespace testing
