#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "urllc/math_kernels.hpp"

namespace urllc {

/// Nakagami-m power-gain fading, normalized to unit mean: Z ~ Gamma(m, rate m).
/// m = 1 is Rayleigh. m < 0.5 is rejected at construction.
struct FadingModel {
    double m = 1.0;

    explicit FadingModel(double shape = 1.0);
    double pdf(double z) const;
};

enum class EvalMethod { Quadrature, MonteCarlo };

struct EvalConfig {
    EvalMethod method = EvalMethod::Quadrature;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    QuadratureConfig quad{};

    void validate() const;
};

struct FadingSample {
    double z;
};

/// Counter-based stream: sample i of stream `stream_id` depends only on
/// (seed, stream_id, i), so parallel consumers draw identical sequences
/// regardless of scheduling.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t index);
    std::uint64_t next_u64();
    double next_unit();    // uniform on (0,1)
    double next_normal();  // standard normal, Box-Muller (one value per call)

  private:
    std::uint64_t state_;
};

/// One gamma(shape=m, rate=m) draw from the per-index stream.
double sample_gain(const FadingModel& model, std::uint64_t seed,
                   std::uint64_t stream_id, std::uint64_t index);

/// i.i.d. draws; deterministic for fixed (cfg.seed, stream_id, count).
std::vector<FadingSample> sample(const FadingModel& model, const EvalConfig& cfg,
                                 std::uint64_t count, std::uint64_t stream_id = 0);

/// E_Z[g(Z)] by quadrature or Monte Carlo. The Monte Carlo result carries the
/// standard error in est_error and is always flagged converged.
KernelValue expect(const FadingModel& model, const std::function<double(double)>& g,
                   const EvalConfig& cfg, std::uint64_t stream_id = 0);

}  // namespace urllc
