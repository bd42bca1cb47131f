#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace prft {

/// Seeded generator used for every random draw in the library.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the C++ standard,
/// and maps raw 64-bit draws to doubles with a plain shift so no
/// implementation-defined distribution code is involved. Identical seeds give
/// identical streams on every conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Standard normal via Box-Muller on two uniform01 draws.
    double normal();

private:
    std::mt19937_64 engine_;
};

/// Derives well-mixed, pairwise distinct 64-bit seeds from one master seed
/// (SplitMix64 over a counter; the mix is a bijection so seeds never repeat
/// within 2^64 draws).
class SeedStream {
public:
    explicit SeedStream(std::uint64_t master) : state_(master) {}

    std::uint64_t next();
    std::vector<std::uint64_t> take(std::size_t count);

private:
    std::uint64_t state_;
};

/// Seed drawn from the operating system's entropy source.
std::uint64_t entropy_seed();

} // namespace prft
