#pragma once

#include "urllc/effective_capacity.hpp"

namespace urllc {

/// Linear power consumption: total = zeta * rho + pc.
struct PowerModel {
    double zeta = 1.2;  // inverse drain efficiency, >= 1
    double pc = 0.2;    // circuit power, watts

    void validate() const;
};

enum class BufferMode { FullBuffer, EmptyBufferAware };

struct TrafficModel {
    double lambda = 1.0;  // arrival rate, bpcu
    BufferMode buffer_mode = BufferMode::EmptyBufferAware;

    void validate() const;
};

struct EeeResult {
    double eee = 0.0;
    double ec = 0.0;
    double p_nb = 1.0;
    double p_total = 0.0;
    bool feasible = true;
};

struct NbpResult {
    double p_nb = 1.0;
    double expected_rate = 0.0;
    bool feasible = true;  // false when lambda exceeds the service rate
};

struct ThetaStarResult {
    double theta = 0.0;
    bool slack = false;  // p_nb <= lambda_out: constraint inactive, theta* = 0
};

double power_total_linear(double rho, const PowerModel& pm);

/// Full-buffer EEE: EC / (zeta rho + pc) with EC by the selected method.
EeeResult eee_full_buffer(const LinkParams& p, const QoSConstraints& q,
                          const PowerModel& pm, const EvalConfig& cfg,
                          EcMethod method);

/// Non-empty-buffer probability lambda / E[max(r,0)], capped at 1 and flagged
/// infeasible when the queue is unstable.
NbpResult nbp(const LinkParams& p, const TrafficModel& tm,
              const FadingModel& model, const EvalConfig& cfg);

/// Empty-buffer-aware EEE: EC / (p_nb zeta rho + pc). FullBuffer mode forces
/// p_nb = 1 and reduces exactly to eee_full_buffer.
EeeResult eee_ebp(const LinkParams& p, const QoSConstraints& q,
                  const PowerModel& pm, const TrafficModel& tm,
                  const EvalConfig& cfg, EcMethod method);

/// Delay exponent making the violation constraint tight:
/// theta* = ln(p_nb / lambda_out) / (lambda delta).
ThetaStarResult theta_star(const TrafficModel& tm, const QoSConstraints& q,
                           double p_nb);

}  // namespace urllc
