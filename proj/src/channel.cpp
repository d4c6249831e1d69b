#include "urllc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace urllc {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return splitmix(splitmix(splitmix(a) ^ b) ^ c);
}

}  // namespace

FadingModel::FadingModel(double shape) : m(shape) {
    if (!(m >= 0.5))
        throw std::invalid_argument("FadingModel: shape m must be >= 0.5");
}

double FadingModel::pdf(double z) const {
    if (z < 0.0) throw std::domain_error("FadingModel::pdf: z must be >= 0");
    if (z == 0.0) {
        if (m < 1.0) return std::numeric_limits<double>::infinity();
        return m == 1.0 ? 1.0 : 0.0;
    }
    return std::exp(m * std::log(m) + (m - 1.0) * std::log(z) - m * z -
                    std::lgamma(m));
}

void EvalConfig::validate() const {
    if (mc_samples < 1)
        throw std::invalid_argument("EvalConfig: mc_samples must be >= 1");
    quad.validate();
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_id,
                       std::uint64_t index)
    : state_(mix3(seed, stream_id, index)) {}

std::uint64_t CounterRng::next_u64() {
    state_ += kGolden;
    return splitmix(state_);
}

double CounterRng::next_unit() {
    // 53-bit mantissa, shifted into (0,1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    double u1 = next_unit();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

double sample_gain(const FadingModel& model, std::uint64_t seed,
                   std::uint64_t stream_id, std::uint64_t index) {
    CounterRng rng(seed, stream_id, index);
    double shape = model.m;
    double boost = 1.0;
    if (shape < 1.0) {
        // Gamma(shape) = Gamma(shape+1) * U^{1/shape}
        boost = std::pow(rng.next_unit(), 1.0 / shape);
        shape += 1.0;
    }
    // Marsaglia-Tsang squeeze for shape >= 1.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = rng.next_normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = rng.next_unit();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v * boost / model.m;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return d * v * boost / model.m;
    }
}

std::vector<FadingSample> sample(const FadingModel& model, const EvalConfig& cfg,
                                 std::uint64_t count, std::uint64_t stream_id) {
    if (count < 1) throw std::invalid_argument("sample: count must be >= 1");
    std::vector<FadingSample> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i)
        out.push_back({sample_gain(model, cfg.seed, stream_id, i)});
    return out;
}

KernelValue expect(const FadingModel& model, const std::function<double(double)>& g,
                   const EvalConfig& cfg, std::uint64_t stream_id) {
    cfg.validate();
    if (cfg.method == EvalMethod::Quadrature) {
        const double upper = gamma_truncation_point(model.m);
        auto f = [&](double z) { return z > 0.0 ? g(z) * model.pdf(z) : 0.0; };
        return integrate_with_ladder(f, upper, cfg.quad);
    }
    // Monte Carlo with fixed-size chunked accumulation: the chunk boundaries
    // depend only on the sample index, so the sum is independent of threading.
    const std::uint64_t n = cfg.mc_samples;
    constexpr std::uint64_t kChunk = 65536;
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t base = 0; base < n; base += kChunk) {
        std::uint64_t end = std::min(n, base + kChunk);
        double cs = 0.0, cs2 = 0.0;
        for (std::uint64_t i = base; i < end; ++i) {
            double v = g(sample_gain(model, cfg.seed, stream_id, i));
            cs += v;
            cs2 += v * v;
        }
        sum += cs;
        sumsq += cs2;
    }
    double mean = sum / static_cast<double>(n);
    double var = std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
    double stderr_est = n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) : 0.0;
    return {mean, stderr_est, true};
}

}  // namespace urllc
