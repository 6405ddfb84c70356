#include "ctreserve/ct_model.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ctreserve {

CtParams to_ct(const DevParams& p) {
    CtParams out;
    out.drift.reserve(p.factors.size());
    out.diffusion2.reserve(p.factors.size());
    for (std::size_t j = 0; j < p.factors.size(); ++j) {
        const double big_f = p.factors[j];
        if (!(big_f > 0.0)) throw std::invalid_argument("to_ct: development factors must be > 0");
        const double f = std::log(big_f);
        out.drift.push_back(f);
        // Sigma^2 f / (F (F-1)) with F(F-1) = e^f expm1(f); limit Sigma^2 at f = 0
        const double s2 = p.sigma2[j];
        out.diffusion2.push_back(f == 0.0 ? s2 : s2 * f / (std::exp(f) * std::expm1(f)));
    }
    return out;
}

DevParams from_ct(const CtParams& c) {
    DevParams out;
    out.factors.reserve(c.drift.size());
    out.sigma2.reserve(c.drift.size());
    for (std::size_t j = 0; j < c.drift.size(); ++j) {
        const double f = c.drift[j];
        const double sg2 = c.diffusion2[j];
        if (!(sg2 >= 0.0)) throw std::invalid_argument("from_ct: diffusion2 must be >= 0");
        out.factors.push_back(std::exp(f));
        out.sigma2.push_back(f == 0.0 ? sg2 : sg2 * std::exp(f) * std::expm1(f) / f);
    }
    return out;
}

Moments cond_moments(double c, double f, double sigma2, double dt) {
    if (!(c >= 0.0)) throw std::invalid_argument("cond_moments: starting value must be >= 0");
    if (!(dt > 0.0 && dt <= 1.0)) throw std::invalid_argument("cond_moments: dt must be in (0, 1]");
    const double growth = std::exp(f * dt);
    const double var_factor = f == 0.0 ? dt : growth * std::expm1(f * dt) / f;
    return {c * growth, c * sigma2 * var_factor};
}

TransitionLaw transition_law(double c, double f, double sigma2, double dt) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("transition_law: sigma2 must be > 0");
    if (!(c >= 0.0)) throw std::invalid_argument("transition_law: starting value must be >= 0");
    if (!(dt > 0.0 && dt <= 1.0)) throw std::invalid_argument("transition_law: dt must be in (0, 1]");
    TransitionLaw law;
    law.horizon = dt;
    law.beta = f == 0.0 ? 2.0 / (sigma2 * dt) : 2.0 * f / (sigma2 * std::expm1(f * dt));
    law.lambda = law.beta * std::exp(f * dt) * c;
    return law;
}

double laplace_transform(double z, double c, double f, double sigma2, double dt) {
    const TransitionLaw law = transition_law(c, f, sigma2, dt);
    if (!(z > -law.beta)) {
        throw std::domain_error("laplace_transform: z must exceed -2f/(sigma2 (e^{f dt} - 1))");
    }
    return std::exp(-law.lambda * z / (law.beta + z));
}

double prob_zero(double c, double f, double sigma2, double dt) {
    if (!(c >= 0.0)) throw std::invalid_argument("prob_zero: starting value must be >= 0");
    if (sigma2 == 0.0) {
        return c > 0.0 ? 0.0 : 1.0;  // deterministic positive growth / absorbed
    }
    return std::exp(-transition_law(c, f, sigma2, dt).lambda);
}

double sample_transition(const TransitionLaw& law, RandomStream& rng) {
    const std::uint64_t n = rng.poisson(law.lambda);
    const double value = n == 0 ? 0.0 : rng.gamma(static_cast<double>(n), law.beta);
    assert(value >= 0.0);
    return value;
}

}  // namespace ctreserve
