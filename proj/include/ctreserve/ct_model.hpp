#pragma once

#include "ctreserve/chain_ladder.hpp"
#include "ctreserve/rng.hpp"

namespace ctreserve {

/// Piecewise-constant coefficients of dC = f C dt + sigma sqrt(C) dW, one
/// (f_j, sigma^2_j) pair per development year.
struct CtParams {
    std::vector<double> drift;       // f_j, any sign
    std::vector<double> diffusion2;  // sigma^2_j >= 0
};

/// Parameters of the exact one-step conditional law: a Poisson(lambda)
/// number of exponential(beta) jumps, i.e. S | N ~ Gamma(N, beta).
/// beta is a rate: E[S] = lambda/beta, Var[S] = 2 lambda/beta^2, and the
/// atom at zero is exp(-lambda).
struct TransitionLaw {
    double lambda = 0.0;
    double beta = 0.0;
    double horizon = 1.0;  // elapsed time dt in (0, 1]
};

/// f_j = log F_j, sigma^2_j = Sigma^2_j log F_j / (F_j (F_j - 1)),
/// with the F -> 1 limit sigma^2 = Sigma^2.
CtParams to_ct(const DevParams& p);

/// F_j = e^{f_j}, Sigma^2_j = sigma^2_j (e^{2 f_j} - e^{f_j}) / f_j,
/// with the f -> 0 limit Sigma^2 = sigma^2.
DevParams from_ct(const CtParams& c);

/// mean = c e^{f dt}; variance = c sigma^2 (e^{2 f dt} - e^{f dt}) / f,
/// f -> 0 limit c sigma^2 dt.
Moments cond_moments(double c, double f, double sigma2, double dt);

/// Conditional Laplace transform E[e^{-z C_{t}} | C_j = c] for
/// z > -2f / (sigma^2 (e^{f dt} - 1)). Requires sigma2 > 0.
double laplace_transform(double z, double c, double f, double sigma2, double dt);

/// P(C_t = 0 | C_j = c). Zero when sigma2 == 0 and c > 0 (deterministic
/// positive path); one when c == 0 (absorbed).
double prob_zero(double c, double f, double sigma2, double dt);

/// beta = 2f / (sigma^2 (e^{f dt} - 1)) (f -> 0 limit 2/(sigma^2 dt)),
/// lambda = beta e^{f dt} c. Requires sigma2 > 0, c >= 0, dt in (0, 1].
TransitionLaw transition_law(double c, double f, double sigma2, double dt);

/// Exact draw from the law: N ~ Poisson(lambda), then Gamma(N, beta);
/// zero when N == 0. Never negative.
double sample_transition(const TransitionLaw& law, RandomStream& rng);

}  // namespace ctreserve
