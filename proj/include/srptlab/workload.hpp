#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "srptlab/model.hpp"

namespace srptlab {

// xorshift64* with splitmix64 seeding:
//   state_0 = splitmix64(seed), and 0 is replaced by 0x9E3779B97F4A7C15
//   x ^= x >> 12; x ^= x << 25; x ^= x >> 27; output = x * 0x2545F4914F6CDD1D
// Bounded draws use rejection sampling on the top of the 64-bit range.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed);
    std::uint64_t next();
    // Uniform integer in [lo, hi]; requires lo <= hi.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t state_;
};

enum class Family { Uniform, Bursty, StarvationStream, HeavyTailDiscrete };

std::string to_string(Family f);
Family family_from_string(std::string_view name);  // throws InputError

struct IntRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

struct GenSpec {
    Family family = Family::Uniform;
    std::size_t n = 0;
    int machines = 1;
    IntRange size_range{1, 5};
    IntRange release_range{0, 10};
    std::uint64_t seed = 0;
};

// Pure function of `spec`. Ids are assigned in (release, draw order).
// Throws InputError for invalid ranges or machines < 1.
Instance generate(const GenSpec& spec);

// Line format: "m <machines>", then "job <id> <release> <size>"; numbers are
// "<int>" or "<int>/<posint>"; '#' starts a comment. Errors carry the line number.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

}  // namespace srptlab
