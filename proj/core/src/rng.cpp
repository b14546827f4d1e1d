#include "bswet/rng.hpp"

#include <cmath>

namespace bswet::rng {

std::array<std::uint32_t, 4> philox4x32(std::uint64_t key,
                                        const std::array<std::uint32_t, 4>& counter) {
    constexpr std::uint32_t mul0 = 0xD2511F53u;
    constexpr std::uint32_t mul1 = 0xCD9E8D57u;
    constexpr std::uint32_t weyl0 = 0x9E3779B9u;
    constexpr std::uint32_t weyl1 = 0xBB67AE85u;

    std::uint32_t k0 = static_cast<std::uint32_t>(key);
    std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
    std::array<std::uint32_t, 4> x = counter;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(mul0) * x[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(mul1) * x[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        x = {hi1 ^ x[1] ^ k0, lo1, hi0 ^ x[3] ^ k1, lo0};
        k0 += weyl0;
        k1 += weyl1;
    }
    return x;
}

std::complex<double> complex_gaussian(const RngStream& stream, std::uint32_t lane_hi,
                                      std::uint32_t lane_lo, double variance) {
    const auto words = philox4x32(stream.seed,
                                  {static_cast<std::uint32_t>(stream.draw),
                                   static_cast<std::uint32_t>(stream.draw >> 32), lane_hi,
                                   lane_lo});
    const std::uint64_t a =
        static_cast<std::uint64_t>(words[0]) | (static_cast<std::uint64_t>(words[1]) << 32);
    const std::uint64_t b =
        static_cast<std::uint64_t>(words[2]) | (static_cast<std::uint64_t>(words[3]) << 32);
    // u1 in (0, 1] so the log is finite; u2 in [0, 1).
    const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-std::log(u1) * variance);
    const double angle = 6.283185307179586476925286766559 * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace bswet::rng
