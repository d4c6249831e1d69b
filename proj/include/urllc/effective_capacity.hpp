#pragma once

#include "urllc/channel.hpp"
#include "urllc/fbl_rate.hpp"

namespace urllc {

/// Statistical delay requirements: theta is the per-symbol delay exponent,
/// delta the delay bound in symbol periods, lambda_out the delay-violation
/// probability, epsilon_t the target error probability.
struct QoSConstraints {
    double theta = 0.01;
    double delta = 500.0;
    double lambda_out = 1e-2;
    double epsilon_t = 1e-4;

    void validate() const;
};

/// Exponents of the closed forms: alpha = -theta n / ln 2 drives the power
/// weighting, beta = theta sqrt(n) Q^{-1}(eps) log2 e the dispersion series.
struct SeriesTerms {
    double alpha;
    double beta;
    int taylor_terms = 3;
};

SeriesTerms series_terms(const LinkParams& p, double theta, int taylor_terms = 3);

enum class EcMethod { Stochastic, Series, RayleighClosedForm, Shannon };

struct EcResult {
    double ec = 0.0;
    double psi = 1.0;
    EcMethod method = EcMethod::Stochastic;
    double est_error = 0.0;
    bool converged = true;
};

/// psi = E_Z[eps + (1-eps) e^{-n theta r}] with the raw (unclamped) rate.
KernelValue psi_stochastic(const LinkParams& p, const QoSConstraints& q,
                           const EvalConfig& cfg);

/// Effective capacity -ln(psi)/(n theta). theta == 0 falls back to the
/// analytic limit (1-eps) E[r].
EcResult ec_stochastic(const LinkParams& p, const QoSConstraints& q,
                       const EvalConfig& cfg);

/// Truncated-series closed form: e^{beta gamma} expanded to `taylor_terms`
/// terms, each term integrated exactly against the fading density.
EcResult ec_series(const LinkParams& p, const QoSConstraints& q,
                   const SeriesTerms& terms, const EvalConfig& cfg);

/// Rayleigh-only kernel J = (b^2/2+b+1) I(alpha) - (b^2/2+b) I(alpha-2),
/// assembled from the bounded power expectation I(.) so no exponential or
/// gamma factor can overflow. Rejects m != 1.
double rayleigh_kernel(const LinkParams& p, const QoSConstraints& q,
                       const EvalConfig& cfg);

/// dJ/drho in the same bounded kernels:
/// J' = (alpha/rho) J + (2 kappa2 / rho) I(alpha-2) - (J-1)/rho^2.
double rayleigh_kernel_drho(const LinkParams& p, const QoSConstraints& q,
                            const EvalConfig& cfg);

/// EC from psi = eps + (1-eps) J (Rayleigh closed form).
EcResult ec_rayleigh_closed_form(const LinkParams& p, const QoSConstraints& q,
                                 const EvalConfig& cfg);

/// Long-packet baseline: dispersion and error floor removed
/// (psi = E[(1+rho z)^alpha]).
EcResult ec_shannon(const LinkParams& p, const QoSConstraints& q,
                    const EvalConfig& cfg);

/// Delay bound delta = -ln(lambda_out) / (theta * ec) in symbol periods.
double delay_bound(double ec, const QoSConstraints& q, double theta);

}  // namespace urllc
