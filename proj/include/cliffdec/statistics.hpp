#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace cliffdec {

double mean(const std::vector<double>& xs);
// unbiased sample variance (n-1 denominator); 0 for fewer than two samples
double variance(const std::vector<double>& xs);
double median(std::vector<double> xs);

// Pearson statistic of observed counts against a uniform expectation
double chi_square_uniform(const std::vector<uint64_t>& counts);

// survival function of the chi-square distribution: P(X >= stat) with `dof`
// degrees of freedom, via the regularized incomplete gamma function
double chi_square_p_value(double stat, uint32_t dof);

// Wilson score interval for a binomial proportion at confidence z (1.96 for
// 95%); returns {low, high}
std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials, double z = 1.96);

}  // namespace cliffdec
