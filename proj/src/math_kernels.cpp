#include "urllc/math_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <vector>

namespace urllc {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

// 7-15 Gauss-Kronrod nodes/weights (positive half; node 7 is the center).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    // QUADPACK dqk15 error estimate with resasc scaling.
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fv[i] - reskh) + std::abs(fv[14 - i] - reskh));
    resasc *= std::abs(h);
    double value = resk * h;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {value, std::max(err, std::abs(value) * 5e-17)};
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

double log_gamma(double a) { return std::lgamma(a); }

// Scaled upper incomplete gamma by Lentz continued fraction; valid a < x + 1.
double gamma_cf_scaled(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h;  // G(a,x) = e^x x^{-a} Gamma(a,x) = h
}

// Lower-gamma series; returns S = sum_k x^k / (a (a+1) ... (a+k)) so that
// G(a,x) = e^x x^{-a} Gamma(a) - S. Used for 0 < a, x <= a + 1.
double lower_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-17) break;
    }
    return sum;
}

// G(0, x) = e^x E1(x).
double g_zero(double x) {
    if (x > 1.0) return gamma_cf_scaled(0.0, x);
    // E1 series for small x.
    constexpr double euler = 0.5772156649015329;
    double sum = -euler - std::log(x);
    double term = 1.0;
    for (int k = 1; k <= 60; ++k) {
        term *= -x / k;
        sum -= term / k;
        if (std::abs(term / k) < std::abs(sum) * 1e-17) break;
    }
    return std::exp(x) * sum;
}

double scaled_upper_gamma_positive(double a, double x) {
    if (x > a + 1.0) return gamma_cf_scaled(a, x);
    double s = lower_series(a, x);
    double full = std::exp(x - a * std::log(x) + log_gamma(a));
    return full - s;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions < 1)
        throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
}

double gaussian_q(double x) {
    if (std::isnan(x)) throw std::domain_error("gaussian_q: x must be finite");
    return 0.5 * std::erfc(x / kSqrt2);
}

double gaussian_q_inv(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("gaussian_q_inv: p must lie in (0,1)");

    // Acklam's rational approximation for the probit, then Newton in Q-space.
    static const double A[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double B[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double C[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double D[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double p_low = 0.02425;
    double x;  // probit(p) = Phi^{-1}(p)
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
            (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5]) /
            ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
    }
    double y = -x;  // Q^{-1}(p) = -Phi^{-1}(p)
    for (int it = 0; it < 2; ++it) {
        double err = gaussian_q(y) - p;
        double pdf = std::exp(-0.5 * y * y) / kSqrt2Pi;
        if (pdf <= 0.0) break;
        y += err / pdf;
    }
    return y;
}

double q_inv_derivative(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::domain_error("q_inv_derivative: eps must lie in (0,1)");
    double q = gaussian_q_inv(eps);
    return -kSqrt2Pi * std::exp(0.5 * q * q);
}

KernelValue integrate_adaptive(const std::function<double(double)>& f,
                               std::span<const double> breakpoints,
                               const QuadratureConfig& cfg) {
    cfg.validate();
    if (breakpoints.size() < 2)
        throw std::invalid_argument("integrate_adaptive: need at least one interval");

    std::priority_queue<Segment> heap;
    double total = 0.0, active_err = 0.0, frozen_err = 0.0;
    int panels = 0;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        double a = breakpoints[i], b = breakpoints[i + 1];
        if (!(b > a)) continue;
        auto r = gk15(f, a, b);
        heap.push({a, b, r.value, r.error});
        total += r.value;
        active_err += r.error;
        ++panels;
    }
    auto tol = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
    while (active_err + frozen_err > tol() && panels < cfg.max_subdivisions &&
           !heap.empty()) {
        Segment s = heap.top();
        heap.pop();
        double mid = 0.5 * (s.a + s.b);
        if (mid <= s.a || mid >= s.b) {  // interval exhausted at double precision
            active_err -= s.error;
            frozen_err += s.error;
            continue;
        }
        auto l = gk15(f, s.a, mid);
        auto r = gk15(f, mid, s.b);
        total += l.value + r.value - s.value;
        active_err += l.error + r.error - s.error;
        heap.push({s.a, mid, l.value, l.error});
        heap.push({mid, s.b, r.value, r.error});
        ++panels;
    }
    double toterr = active_err + frozen_err;
    return {total, toterr, toterr <= tol()};
}

KernelValue integrate_with_ladder(const std::function<double(double)>& f,
                                  double upper, const QuadratureConfig& cfg) {
    // Geometric panels toward 0: integrands of the form (1+rho z)^beta f_Z(z)
    // concentrate arbitrarily close to the origin for strongly negative beta.
    std::vector<double> pts;
    pts.push_back(0.0);
    for (int k = 48; k >= 0; --k) pts.push_back(upper * std::ldexp(1.0, -k));
    return integrate_adaptive(f, pts, cfg);
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("regularized_gamma_q: a must be > 0");
    if (x <= 0.0) return 1.0;
    double g = scaled_upper_gamma_positive(a, x);
    // Q(a,x) = G(a,x) * x^a e^{-x} / Gamma(a)
    double logq = std::log(g) + a * std::log(x) - x - log_gamma(a);
    return std::min(1.0, std::exp(logq));
}

double gamma_truncation_point(double m, double tail_mass) {
    static std::map<std::pair<double, double>, double> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({m, tail_mass});
        if (it != cache.end()) return it->second;
    }
    // Find T with Q(m, m T) < tail_mass by doubling, then add margin for
    // integrands growing like (1+rho z)^2.
    double t = 4.0;
    while (regularized_gamma_q(m, m * t) > tail_mass && t < 1e6) t *= 2.0;
    double lo = t / 2.0, hi = t;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        if (regularized_gamma_q(m, m * mid) > tail_mass) lo = mid;
        else hi = mid;
    }
    double result = hi + 12.0 / m + 8.0;
    std::lock_guard<std::mutex> lock(mu);
    cache[{m, tail_mass}] = result;
    return result;
}

KernelValue power_exp_integral(double beta, double rho, double m,
                               const QuadratureConfig& cfg) {
    if (!(rho > 0.0)) throw std::domain_error("power_exp_integral: rho must be > 0");
    if (!(m >= 0.5)) throw std::domain_error("power_exp_integral: m must be >= 0.5");
    const double upper = gamma_truncation_point(m);
    const double log_norm = m * std::log(m) - log_gamma(m);
    auto f = [&](double z) {
        if (z <= 0.0) return 0.0;
        double logd = log_norm - m * z;
        if (m != 1.0) logd += (m - 1.0) * std::log(z);
        return std::exp(beta * std::log1p(rho * z) + logd);
    };
    return integrate_with_ladder(f, upper, cfg);
}

double upper_incomplete_gamma_scaled(double a, double x) {
    if (!(x > 0.0))
        throw std::domain_error("upper_incomplete_gamma_scaled: x must be > 0");
    if (a > 0.0) return scaled_upper_gamma_positive(a, x);

    // Downward recurrence G(a-1,x) = (x G(a,x) - 1)/(a-1) from a seed above 1,
    // or from G(0,x) when a is a non-positive integer.
    double seed_a;
    double g;
    if (a == std::floor(a)) {
        seed_a = 0.0;
        g = g_zero(x);
    } else {
        double k = std::floor(1.0 - a) + 1.0;  // smallest integer with a + k in (1,2]
        seed_a = a + k;
        g = scaled_upper_gamma_positive(seed_a, x);
    }
    for (double aa = seed_a; aa > a + 0.5; aa -= 1.0)
        g = (x * g - 1.0) / (aa - 1.0);
    return g;
}

}  // namespace urllc
