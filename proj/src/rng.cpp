#include "ctreserve/rng.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctreserve {

namespace {

constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t split_mix_next(std::uint64_t& s) {
    std::uint64_t z = (s += kSplitMixGamma);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// log(k!) for integer-valued k >= 0; exact table low, Stirling series high.
double log_factorial(double k) {
    static const auto table = [] {
        std::array<double, 30> t{};
        double acc = 0.0;
        for (std::size_t i = 1; i < t.size(); ++i) {
            acc += std::log(static_cast<double>(i));
            t[i] = acc;
        }
        return t;
    }();
    if (k < static_cast<double>(table.size())) {
        return table[static_cast<std::size_t>(k)];
    }
    static const double half_log_2pi = 0.5 * std::log(2.0 * 3.14159265358979323846);
    const double inv = 1.0 / k;
    const double inv2 = inv * inv;
    return (k + 0.5) * std::log(k) - k + half_log_2pi +
           inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream) {
    // Fold the stream index through the SplitMix64 finalizer so that, for a
    // fixed seed, distinct stream ids always start from distinct states.
    std::uint64_t s = stream;
    std::uint64_t folded = seed ^ split_mix_next(s);
    do {
        for (auto& word : state_) word = split_mix_next(folded);
    } while (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0);
}

std::uint64_t RandomStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_pos() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * m;
    has_spare_ = true;
    return u * m;
}

double RandomStream::gamma(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw std::invalid_argument("gamma: shape and rate must be positive");
    }
    if (shape < 1.0) {
        // Boost: G(a) = G(a+1) * U^{1/a}
        const double u = uniform_pos();
        return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_pos();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

std::uint64_t RandomStream::poisson(double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("poisson: mean must be finite and non-negative");
    }
    if (mean == 0.0) return 0;
    if (mean < 10.0) {
        // product-of-uniforms inversion
        const double floor_prob = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = 1.0;
        for (;;) {
            prod *= uniform();
            if (prod > floor_prob) {
                ++k;
            } else {
                return k;
            }
        }
    }
    // Hormann's PTRS transformed rejection, valid for mean >= 10.
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = uniform() - 0.5;
        const double v = uniform_pos();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            k * log_mean - mean - log_factorial(k)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

double RandomStream::chi_square(double dof) {
    if (!(dof > 0.0)) throw std::invalid_argument("chi_square: dof must be positive");
    return gamma(0.5 * dof, 0.5);
}

std::size_t RandomStream::uniform_index(std::size_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_index: bound must be nonzero");
    const std::uint64_t b = bound;
    const std::uint64_t threshold = (0 - b) % b;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return static_cast<std::size_t>(r % b);
    }
}

}  // namespace ctreserve
