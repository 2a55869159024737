#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyperdisc::stats {

// Quantile function of the standard normal distribution.
double normal_quantile(double p);

double mean(std::span<const double> xs);

// Population standard deviation (divide by n, not n-1).
double population_sd(std::span<const double> xs);

// Fractional (average-on-ties) ranks, 1-based ascending. +inf entries tie in
// the top rank block; NaN is rejected.
std::vector<double> fractional_ranks(std::span<const double> xs);

enum class Tail { TwoSided, Less, Greater };

struct Correlation {
    double rho = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

// Spearman rank correlation with average ranks. p-value is an exact
// permutation test for n < 10 and the large-sample t approximation otherwise.
Correlation spearman(std::span<const double> xs, std::span<const double> ys,
                     Tail tail = Tail::TwoSided);

// One-sample t-test of mean(xs) > 0 (Tail::Greater) etc. Used for paired
// comparisons by passing per-seed differences.
double t_test_p(std::span<const double> xs, Tail tail);

}  // namespace hyperdisc::stats
