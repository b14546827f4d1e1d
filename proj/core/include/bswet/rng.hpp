#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace bswet::rng {

/// Philox 4x32-10 counter-based generator. A (key, counter) pair maps to four
/// independent 32-bit words with no sequential state, so any draw can be
/// produced directly and in parallel without coordination between workers.
std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        const std::array<std::uint32_t, 4>& counter);

/// Names one draw of a seeded stream. `draw` is the Monte Carlo run (or
/// repetition) index; lane values distinguish entries within one draw.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t draw = 0;
};

/// Circularly-symmetric complex Gaussian with the given variance (real and
/// imaginary parts are each N(0, variance/2)). Deterministic in
/// (seed, draw, lane_hi, lane_lo).
std::complex<double> complex_gaussian(const RngStream& stream, std::uint32_t lane_hi,
                                      std::uint32_t lane_lo, double variance);

}  // namespace bswet::rng
