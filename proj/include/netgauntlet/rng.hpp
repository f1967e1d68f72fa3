#pragma once

#include <cstdint>
#include <vector>

namespace netgauntlet {

// Every random decision in the pipeline is derived from one master seed
// through derive_seed(master, role, counter). Keeping the generator
// self-contained (splitmix64) makes runs byte-reproducible across
// platforms and standard libraries.
enum class SeedRole : std::uint64_t {
    sample = 1,
    folds = 2,
    forest_tree = 3,
    mlp_init = 4,
    mlp_shuffle = 5,
    synth = 6,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, SeedRole role, std::uint64_t counter = 0) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = a ^ (static_cast<std::uint64_t>(role) * 0xd6e8feb86659fd93ULL);
    std::uint64_t b = splitmix64(s);
    s = b ^ (counter * 0xa0761d6478bd642fULL);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = n * (UINT64_MAX / n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace netgauntlet
