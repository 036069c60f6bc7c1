#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace dsm {

// Counter-style generator built on the splitmix64 mixer. A stream is fully
// determined by (seed, stream_index): the two words are mixed into the
// starting state, after which each draw advances the Weyl counter and
// scrambles it. Distinct stream indices give decorrelated sequences, which
// is what the deterministic block-parallel reductions rely on: block k of a
// Monte Carlo loop always uses stream k regardless of how many threads run.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0)
        : state_(mix(seed + 0x9E3779B97F4A7C15ULL * (stream_index + 1)) ^
                 mix(stream_index + 0x7F4A7C15ULL)),
          seed_(seed),
          stream_(stream_index) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform in (0, 1]; never returns 0 so log(uniform()) is always finite.
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Complex Gaussian with iid standard normal real and imaginary parts.
    std::complex<double> normal_complex() {
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    std::uint64_t seed_;
    std::uint64_t stream_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace dsm
