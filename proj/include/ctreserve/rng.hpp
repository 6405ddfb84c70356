#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace ctreserve {

/// Deterministic random stream for data-parallel Monte Carlo.
///
/// One stream per replicate, derived from (seed, stream index) through
/// SplitMix64 and driven by xoshiro256++. Identical (seed, stream) and call
/// sequence reproduce identical draws on any platform; streams are never
/// shared between threads.
///
/// The distribution samplers are exact:
///  - poisson: sequential inversion below mean 10, Hormann's PTRS transformed
///    rejection above (valid for arbitrarily large mean, no Normal cutover);
///  - gamma: Marsaglia-Tsang squeeze for shape >= 1, boosted for shape < 1;
///    rate parameterization (mean shape/rate).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double uniform();      // [0, 1), 53-bit resolution
    double uniform_pos();  // (0, 1)

    double normal();  // standard normal (Marsaglia polar, cached spare)
    double gamma(double shape, double rate);
    std::uint64_t poisson(double mean);
    double chi_square(double dof);

    /// Unbiased integer in [0, bound). bound must be nonzero.
    std::size_t uniform_index(std::size_t bound);

private:
    std::array<std::uint64_t, 4> state_{};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace ctreserve
