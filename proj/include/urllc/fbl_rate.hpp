#pragma once

#include "urllc/channel.hpp"
#include "urllc/math_kernels.hpp"

namespace urllc {

/// Per-link physical configuration. rho is the average SNR in linear watts
/// (unit noise); epsilon is the packet error probability, restricted to
/// (0, 0.5] so the dispersion penalty keeps its sign.
struct LinkParams {
    int n = 500;
    double rho = 1.0;
    double m = 1.0;
    double epsilon = 1e-4;

    void validate() const;
};

/// Pieces of the short-packet rate at one channel realization.
struct RateTerms {
    double shannon;          // log2(1 + rho z)
    double dispersion_root;  // sqrt(1 - (1+rho z)^-2)
    double phi;              // Q^{-1}(eps) log2(e) / sqrt(n)
    double mu;               // log2(e)/sqrt(n) * dispersion_root
};

RateTerms rate_terms(const LinkParams& p, double z);

/// Short-packet achievable rate r = shannon - phi * dispersion_root, in bpcu.
/// May be negative in deep fades; clamping is the caller's policy.
double rate(const LinkParams& p, double z);

/// Analytic d r / d rho. Throws std::domain_error at rho z = 0 where the
/// dispersion root vanishes.
double rate_drho(const LinkParams& p, double z);

/// Analytic d^2 r / d rho^2. Negative only where the log curvature dominates
/// the (positive) dispersion terms; see tests for the sign region.
double rate_d2rho(const LinkParams& p, double z);

/// E_Z[r] (or E_Z[max(r,0)] when clamp_nonneg). The clamped variant splits
/// the integral at the zero crossing of r, which is unique in z.
KernelValue expected_rate(const LinkParams& p, const FadingModel& model,
                          const EvalConfig& cfg, bool clamp_nonneg);

}  // namespace urllc
