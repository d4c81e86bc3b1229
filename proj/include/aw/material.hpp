#pragma once

#include "aw/types.hpp"

namespace aw {

// Isotropic Lame pair; both parameters positive.
struct LameParameters {
    double lambda = 0.0;
    double mu = 0.0;

    LameParameters() = default;
    LameParameters(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
        if (!(lambda > 0.0) || !(mu > 0.0)) throw ConfigError("LameParameters: lambda and mu must be positive");
    }
};

// lambda = E nu / ((1+nu)(1-2nu)), mu = E / (2(1+nu))
inline LameParameters from_young_poisson(double E, double nu) {
    if (!(E > 0.0)) throw ConfigError("from_young_poisson: E must be positive");
    if (!(nu > 0.0) || !(nu < 0.5)) throw ConfigError("from_young_poisson: nu must lie in (0, 1/2)");
    return LameParameters(E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)), E / (2.0 * (1.0 + nu)));
}

// Inverse conversion, mainly for round-trip checks.
inline std::pair<double, double> young_poisson_from(const LameParameters& p) {
    const double E = p.mu * (3.0 * p.lambda + 2.0 * p.mu) / (p.lambda + p.mu);
    const double nu = p.lambda / (2.0 * (p.lambda + p.mu));
    return {E, nu};
}

// C E = 2 mu E + lambda tr(E) I
inline SymMat2 apply_C(const LameParameters& p, const SymMat2& e) {
    const double t = p.lambda * e.trace();
    return {2.0 * p.mu * e.e11 + t, 2.0 * p.mu * e.e12, 2.0 * p.mu * e.e22 + t};
}

// C^{-1} E = (1/(2 mu)) (E - lambda/(2(lambda+mu)) tr(E) I)
inline SymMat2 apply_Cinv(const LameParameters& p, const SymMat2& s) {
    const double t = s.trace() * p.lambda / (2.0 * (p.lambda + p.mu));
    const double f = 0.5 / p.mu;
    return {f * (s.e11 - t), f * s.e12, f * (s.e22 - t)};
}

}  // namespace aw
