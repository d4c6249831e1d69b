#include "urllc/fbl_rate.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace urllc {

namespace {
constexpr double kLog2E = 1.4426950408889634;
constexpr double kLn2 = 0.6931471805599453;
}  // namespace

void LinkParams::validate() const {
    if (n < 1) throw std::invalid_argument("LinkParams: n must be >= 1");
    if (!(rho >= 0.0)) throw std::invalid_argument("LinkParams: rho must be >= 0");
    if (!(m >= 0.5)) throw std::invalid_argument("LinkParams: m must be >= 0.5");
    if (!(epsilon > 0.0) || !(epsilon <= 0.5))
        throw std::invalid_argument("LinkParams: epsilon must lie in (0, 0.5]");
}

RateTerms rate_terms(const LinkParams& p, double z) {
    if (z < 0.0) throw std::domain_error("rate_terms: z must be >= 0");
    const double u = 1.0 + p.rho * z;
    const double inv_u2 = 1.0 / (u * u);
    const double root = std::sqrt(std::max(0.0, 1.0 - inv_u2));
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(p.n));
    return {std::log2(u), root, gaussian_q_inv(p.epsilon) * kLog2E * inv_sqrt_n,
            kLog2E * inv_sqrt_n * root};
}

double rate(const LinkParams& p, double z) {
    RateTerms t = rate_terms(p, z);
    return t.shannon - t.phi * t.dispersion_root;
}

double rate_drho(const LinkParams& p, double z) {
    if (z < 0.0) throw std::domain_error("rate_drho: z must be >= 0");
    const double u = 1.0 + p.rho * z;
    const double g2 = 1.0 - 1.0 / (u * u);
    if (g2 <= 0.0)
        throw std::domain_error("rate_drho: singular at rho*z = 0");
    const double g = std::sqrt(g2);
    const double phi = gaussian_q_inv(p.epsilon) * kLog2E /
                       std::sqrt(static_cast<double>(p.n));
    return z / (u * kLn2) - phi * z / (u * u * u * g);
}

double rate_d2rho(const LinkParams& p, double z) {
    if (z < 0.0) throw std::domain_error("rate_d2rho: z must be >= 0");
    const double u = 1.0 + p.rho * z;
    const double g2 = 1.0 - 1.0 / (u * u);
    if (g2 <= 0.0)
        throw std::domain_error("rate_d2rho: singular at rho*z = 0");
    const double g = std::sqrt(g2);
    const double phi = gaussian_q_inv(p.epsilon) * kLog2E /
                       std::sqrt(static_cast<double>(p.n));
    const double z2 = z * z;
    const double u2 = u * u;
    const double u4 = u2 * u2;
    return 3.0 * phi * z2 / (u4 * g) + phi * z2 / (u4 * u2 * g * g2) -
           z2 / (u2 * kLn2);
}

KernelValue expected_rate(const LinkParams& p, const FadingModel& model,
                          const EvalConfig& cfg, bool clamp_nonneg) {
    p.validate();
    if (p.rho == 0.0) return {0.0, 0.0, true};
    if (!clamp_nonneg)
        return expect(model, [&](double z) { return rate(p, z); }, cfg);
    if (cfg.method == EvalMethod::MonteCarlo)
        return expect(model, [&](double z) { return std::max(0.0, rate(p, z)); },
                      cfg);

    // Quadrature: r(z) is 0 at z = 0, dips negative (phi > 0), and crosses
    // zero exactly once before increasing; integrate from that crossing.
    const double upper = gamma_truncation_point(model.m);
    double z0 = 0.0;
    const double phi = gaussian_q_inv(p.epsilon) * kLog2E /
                       std::sqrt(static_cast<double>(p.n));
    if (phi > 0.0) {
        if (rate(p, upper) <= 0.0) return {0.0, 0.0, true};
        double lo = 1e-300, hi = upper;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (rate(p, mid) < 0.0) lo = mid;
            else hi = mid;
            if (hi - lo <= 1e-15 * hi) break;
        }
        z0 = hi;
    }
    std::vector<double> pts;
    pts.push_back(z0);
    for (int k = 40; k >= 0; --k) {
        double t = z0 + (upper - z0) * std::ldexp(1.0, -k);
        if (t > pts.back()) pts.push_back(t);
    }
    auto f = [&](double z) { return rate(p, z) * model.pdf(z); };
    return integrate_adaptive(f, pts, cfg.quad);
}

}  // namespace urllc
