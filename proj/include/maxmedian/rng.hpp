#pragma once

#include <cstdint>
#include <random>

namespace maxmedian {

// Tags that keep the policy, reward and oracle streams of one trajectory apart.
enum class StreamRole : std::uint64_t {
    Policy = 0x504f4c4943590001ULL,
    Environment = 0x454e5649524f0002ULL,
    Oracle = 0x4f5241434c450003ULL,
};

// SplitMix64 output function (Steele, Lea, Flood).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of the stream owned by (master_seed, index, role):
//   s = splitmix64(splitmix64(splitmix64(master) ^ role) ^ index)
// Three rounds so that neighbouring indices and roles land far apart.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index,
                                    StreamRole role) noexcept {
    const auto r = static_cast<std::uint64_t>(role);
    return splitmix64(splitmix64(splitmix64(master_seed) ^ r) ^ index);
}

// A stream of uniforms strictly inside (0,1), backed by mt19937_64.
//
// The conversion uses the top 53 bits: u = (bits + 0.5) * 2^-53, so 0 and 1
// are never produced and the mapping is identical on every platform.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        ++draws_;
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
    }

    double operator()() { return next(); }

    // Number of uniforms consumed so far.
    std::uint64_t draws() const noexcept { return draws_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t draws_ = 0;
};

}  // namespace maxmedian
