#pragma once

#include <functional>
#include <span>

namespace urllc {

/// Tolerances for the adaptive quadrature engine.
struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;

    void validate() const;
};

/// Value plus error estimate. `converged` is false when the subdivision
/// budget ran out before the tolerance was met, or when a Monte Carlo
/// estimate is returned (est_error then holds the standard error).
struct KernelValue {
    double value = 0.0;
    double est_error = 0.0;
    bool converged = false;
};

/// Gaussian tail probability Q(x) = P(N(0,1) > x). Total on finite reals;
/// underflows to 0 for large x without raising.
double gaussian_q(double x);

/// Inverse of gaussian_q on (0,1). Rational initial guess refined by two
/// Newton steps in Q-space; round-trip accurate to ~1e-15 relative.
/// Throws std::domain_error outside (0,1).
double gaussian_q_inv(double p);

/// d/de Q^{-1}(e) = -sqrt(2 pi) * exp(Q^{-1}(e)^2 / 2). Always negative;
/// throws outside (0,1).
double q_inv_derivative(double eps);

/// Adaptive Gauss-Kronrod (7-15) integration of f over the union of
/// [breakpoints[i], breakpoints[i+1]]. Breakpoints seed the subdivision so
/// narrow features near an endpoint are not missed.
KernelValue integrate_adaptive(const std::function<double(double)>& f,
                               std::span<const double> breakpoints,
                               const QuadratureConfig& cfg);

/// Convenience: integrate f * w over [0, upper] with a geometric ladder of
/// initial panels accumulating toward 0 (integrands here concentrate there).
KernelValue integrate_with_ladder(const std::function<double(double)>& f,
                                  double upper, const QuadratureConfig& cfg);

/// I(beta) = (m^m/Gamma(m)) * Int_0^inf (1+rho z)^beta z^{m-1} e^{-mz} dz,
/// i.e. E[(1+rho Z)^beta] for unit-mean gamma fading. Bounded in (0,1] for
/// beta <= 0, which is why closed forms are assembled from it instead of
/// composing huge exponential/gamma factors.
KernelValue power_exp_integral(double beta, double rho, double m,
                               const QuadratureConfig& cfg);

/// Exponentially scaled upper incomplete gamma G(a,x) = e^x x^{-a} Gamma(a,x)
/// for x > 0 and any real a (negative a via downward recurrence
/// G(a-1,x) = (x G(a,x) - 1)/(a-1)). Throws std::domain_error for x <= 0.
double upper_incomplete_gamma_scaled(double a, double x);

/// Regularized upper tail Q(a, x) = Gamma(a,x)/Gamma(a) for a > 0, x >= 0.
/// Used to bound truncation points of fading expectations.
double regularized_gamma_q(double a, double x);

/// Truncation point T such that the gamma(m, rate m) tail mass beyond T is
/// below `tail_mass`, with a safety margin for polynomially growing
/// integrands. Cached per (m, tail_mass).
double gamma_truncation_point(double m, double tail_mass = 1e-14);

}  // namespace urllc
