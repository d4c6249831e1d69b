#include "urllc/effective_capacity.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace urllc {

namespace {
constexpr double kLog2E = 1.4426950408889634;
constexpr double kLn2 = 0.6931471805599453;

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}
}  // namespace

void QoSConstraints::validate() const {
    if (!(theta >= 0.0)) throw std::invalid_argument("QoS: theta must be >= 0");
    if (!(delta > 0.0)) throw std::invalid_argument("QoS: delta must be > 0");
    if (!(lambda_out > 0.0) || !(lambda_out < 1.0))
        throw std::invalid_argument("QoS: violation probability must lie in (0,1)");
    if (!(epsilon_t > 0.0) || !(epsilon_t <= 0.5))
        throw std::invalid_argument("QoS: epsilon_t must lie in (0, 0.5]");
}

SeriesTerms series_terms(const LinkParams& p, double theta, int taylor_terms) {
    if (taylor_terms < 1)
        throw std::invalid_argument("series_terms: taylor_terms must be >= 1");
    double alpha = -theta * p.n / kLn2;
    double beta = theta * std::sqrt(static_cast<double>(p.n)) *
                  gaussian_q_inv(p.epsilon) * kLog2E;
    return {alpha, beta, taylor_terms};
}

KernelValue psi_stochastic(const LinkParams& p, const QoSConstraints& q,
                           const EvalConfig& cfg) {
    p.validate();
    if (!(q.theta > 0.0))
        throw std::domain_error("psi_stochastic: theta must be > 0");
    FadingModel model(p.m);
    const double nt = q.theta * p.n;
    const double eps = p.epsilon;
    return expect(model,
                  [&](double z) {
                      return eps + (1.0 - eps) * std::exp(-nt * rate(p, z));
                  },
                  cfg);
}

EcResult ec_stochastic(const LinkParams& p, const QoSConstraints& q,
                       const EvalConfig& cfg) {
    p.validate();
    if (q.theta == 0.0) {
        FadingModel model(p.m);
        auto er = expected_rate(p, model, cfg, false);
        return {(1.0 - p.epsilon) * er.value, 1.0, EcMethod::Stochastic,
                er.est_error, er.converged};
    }
    auto psi = psi_stochastic(p, q, cfg);
    double nt = q.theta * p.n;
    return {-std::log(psi.value) / nt, psi.value, EcMethod::Stochastic,
            psi.est_error / (psi.value * nt), psi.converged};
}

EcResult ec_series(const LinkParams& p, const QoSConstraints& q,
                   const SeriesTerms& terms, const EvalConfig& cfg) {
    p.validate();
    if (!(q.theta > 0.0)) throw std::domain_error("ec_series: theta must be > 0");
    FadingModel model(p.m);
    double sum = 0.0, err = 0.0;
    bool conv = true;
    double beta_pow = 1.0;
    for (int k = 0; k < terms.taylor_terms; ++k) {
        auto ik = expect(model,
                         [&](double z) {
                             double u = 1.0 + p.rho * z;
                             double g = std::sqrt(std::max(0.0, 1.0 - 1.0 / (u * u)));
                             return std::exp(terms.alpha * std::log(u)) *
                                    std::pow(g, static_cast<double>(k));
                         },
                         cfg);
        sum += beta_pow / factorial(k) * ik.value;
        err += beta_pow / factorial(k) * ik.est_error;
        conv = conv && ik.converged;
        beta_pow *= terms.beta;
    }
    double psi = p.epsilon + (1.0 - p.epsilon) * sum;
    double nt = q.theta * p.n;
    return {-std::log(psi) / nt, psi, EcMethod::Series, err / (psi * nt), conv};
}

double rayleigh_kernel(const LinkParams& p, const QoSConstraints& q,
                       const EvalConfig& cfg) {
    if (p.m != 1.0)
        throw std::invalid_argument("rayleigh_kernel: requires m = 1");
    if (!(q.theta > 0.0))
        throw std::domain_error("rayleigh_kernel: theta must be > 0");
    auto t = series_terms(p, q.theta);
    double k1 = 0.5 * t.beta * t.beta + t.beta + 1.0;
    double k2 = 0.5 * t.beta * t.beta + t.beta;
    double i0 = power_exp_integral(t.alpha, p.rho, 1.0, cfg.quad).value;
    double i2 = power_exp_integral(t.alpha - 2.0, p.rho, 1.0, cfg.quad).value;
    return k1 * i0 - k2 * i2;
}

double rayleigh_kernel_drho(const LinkParams& p, const QoSConstraints& q,
                            const EvalConfig& cfg) {
    if (p.m != 1.0)
        throw std::invalid_argument("rayleigh_kernel_drho: requires m = 1");
    auto t = series_terms(p, q.theta);
    double k1 = 0.5 * t.beta * t.beta + t.beta + 1.0;
    double k2 = 0.5 * t.beta * t.beta + t.beta;
    double i0 = power_exp_integral(t.alpha, p.rho, 1.0, cfg.quad).value;
    double i2 = power_exp_integral(t.alpha - 2.0, p.rho, 1.0, cfg.quad).value;
    double j = k1 * i0 - k2 * i2;
    return (t.alpha / p.rho) * j + (2.0 * k2 / p.rho) * i2 -
           (j - 1.0) / (p.rho * p.rho);
}

EcResult ec_rayleigh_closed_form(const LinkParams& p, const QoSConstraints& q,
                                 const EvalConfig& cfg) {
    double j = rayleigh_kernel(p, q, cfg);
    double psi = p.epsilon + (1.0 - p.epsilon) * j;
    double nt = q.theta * p.n;
    if (!(psi > 0.0))
        return {std::numeric_limits<double>::quiet_NaN(), psi,
                EcMethod::RayleighClosedForm, 0.0, false};
    return {-std::log(psi) / nt, psi, EcMethod::RayleighClosedForm, 0.0, true};
}

EcResult ec_shannon(const LinkParams& p, const QoSConstraints& q,
                    const EvalConfig& cfg) {
    p.validate();
    if (p.rho == 0.0) return {0.0, 1.0, EcMethod::Shannon, 0.0, true};
    FadingModel model(p.m);
    if (q.theta == 0.0) {
        auto er = expect(model,
                         [&](double z) { return std::log2(1.0 + p.rho * z); }, cfg);
        return {er.value, 1.0, EcMethod::Shannon, er.est_error, er.converged};
    }
    double alpha = -q.theta * p.n / kLn2;
    auto i0 = power_exp_integral(alpha, p.rho, p.m, cfg.quad);
    double nt = q.theta * p.n;
    return {-std::log(i0.value) / nt, i0.value, EcMethod::Shannon,
            i0.est_error / (i0.value * nt), i0.converged};
}

double delay_bound(double ec, const QoSConstraints& q, double theta) {
    if (!(ec > 0.0)) throw std::domain_error("delay_bound: ec must be > 0");
    if (!(theta > 0.0)) throw std::domain_error("delay_bound: theta must be > 0");
    return -std::log(q.lambda_out) / (theta * ec);
}

}  // namespace urllc
