#include "cliffdec/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cliffdec {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean of no samples");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / double(xs.size());
}

double variance(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / double(xs.size() - 1);
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of no samples");
    size_t mid = xs.size() / 2;
    std::nth_element(xs.begin(), xs.begin() + long(mid), xs.end());
    double hi = xs[mid];
    if (xs.size() % 2 == 1) return hi;
    double lo = *std::max_element(xs.begin(), xs.begin() + long(mid));
    return (lo + hi) / 2.0;
}

double chi_square_uniform(const std::vector<uint64_t>& counts) {
    if (counts.empty()) throw std::invalid_argument("no bins");
    uint64_t total = 0;
    for (uint64_t c : counts) total += c;
    double expected = double(total) / double(counts.size());
    if (expected <= 0.0) throw std::invalid_argument("no observations");
    double stat = 0.0;
    for (uint64_t c : counts) {
        double d = double(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

namespace {

// regularized lower incomplete gamma P(a, x) by series expansion (x < a+1)
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 100000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("incomplete gamma series did not converge");
}

// regularized upper incomplete gamma Q(a, x) by continued fraction (x >= a+1)
double gamma_q_cfrac(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

}  // namespace

double chi_square_p_value(double stat, uint32_t dof) {
    if (dof == 0) throw std::invalid_argument("zero degrees of freedom");
    if (stat < 0.0) throw std::invalid_argument("negative statistic");
    if (stat == 0.0) return 1.0;
    double a = double(dof) / 2.0;
    double x = stat / 2.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cfrac(a, x);
}

std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("no trials");
    if (successes > trials) throw std::invalid_argument("successes exceed trials");
    double n = double(trials);
    double p = double(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace cliffdec
