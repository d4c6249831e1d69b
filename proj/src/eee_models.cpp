#include "urllc/eee_models.hpp"

#include <cmath>
#include <stdexcept>

namespace urllc {

void PowerModel::validate() const {
    if (!(zeta >= 1.0)) throw std::invalid_argument("PowerModel: zeta must be >= 1");
    if (!(pc >= 0.0)) throw std::invalid_argument("PowerModel: pc must be >= 0");
}

void TrafficModel::validate() const {
    if (!(lambda > 0.0))
        throw std::invalid_argument("TrafficModel: lambda must be > 0");
}

double power_total_linear(double rho, const PowerModel& pm) {
    if (!(rho >= 0.0))
        throw std::domain_error("power_total_linear: rho must be >= 0");
    return pm.zeta * rho + pm.pc;
}

namespace {

EcResult ec_by_method(const LinkParams& p, const QoSConstraints& q,
                      const EvalConfig& cfg, EcMethod method) {
    switch (method) {
        case EcMethod::Stochastic:
            return ec_stochastic(p, q, cfg);
        case EcMethod::Series:
            return ec_series(p, q, series_terms(p, q.theta), cfg);
        case EcMethod::RayleighClosedForm:
            return ec_rayleigh_closed_form(p, q, cfg);
        case EcMethod::Shannon:
            return ec_shannon(p, q, cfg);
    }
    throw std::logic_error("ec_by_method: unknown method");
}

}  // namespace

EeeResult eee_full_buffer(const LinkParams& p, const QoSConstraints& q,
                          const PowerModel& pm, const EvalConfig& cfg,
                          EcMethod method) {
    pm.validate();
    auto ec = ec_by_method(p, q, cfg, method);
    double pt = power_total_linear(p.rho, pm);
    return {ec.ec / pt, ec.ec, 1.0, pt, true};
}

NbpResult nbp(const LinkParams& p, const TrafficModel& tm,
              const FadingModel& model, const EvalConfig& cfg) {
    tm.validate();
    auto er = expected_rate(p, model, cfg, true);
    if (!(er.value > 0.0) || tm.lambda > er.value)
        return {1.0, er.value, false};
    return {tm.lambda / er.value, er.value, true};
}

EeeResult eee_ebp(const LinkParams& p, const QoSConstraints& q,
                  const PowerModel& pm, const TrafficModel& tm,
                  const EvalConfig& cfg, EcMethod method) {
    pm.validate();
    double p_nb = 1.0;
    bool feasible = true;
    if (tm.buffer_mode == BufferMode::EmptyBufferAware) {
        FadingModel model(p.m);
        auto r = nbp(p, tm, model, cfg);
        p_nb = r.p_nb;
        feasible = r.feasible;
    }
    auto ec = ec_by_method(p, q, cfg, method);
    double pt = p_nb * pm.zeta * p.rho + pm.pc;
    return {feasible ? ec.ec / pt : 0.0, ec.ec, p_nb, pt, feasible};
}

ThetaStarResult theta_star(const TrafficModel& tm, const QoSConstraints& q,
                           double p_nb) {
    tm.validate();
    if (!(p_nb > 0.0) || !(p_nb <= 1.0))
        throw std::domain_error("theta_star: p_nb must lie in (0, 1]");
    if (p_nb <= q.lambda_out) return {0.0, true};
    return {std::log(p_nb / q.lambda_out) / (tm.lambda * q.delta), false};
}

}  // namespace urllc
