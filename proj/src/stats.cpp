#include "hyperdisc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "hyperdisc/errors.hpp"

namespace hyperdisc::stats {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw ArgumentError("normal_quantile: p must lie in (0, 1)");
    static const boost::math::normal_distribution<double> unit;
    return boost::math::quantile(unit, p);
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw ArgumentError("mean of empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double population_sd(std::span<const double> xs) {
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs) acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

std::vector<double> fractional_ranks(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) throw ArgumentError("fractional_ranks: empty input");
    for (double x : xs) {
        if (std::isnan(x)) throw ArgumentError("fractional_ranks: NaN value");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        // Tie block spans positions i..j (0-based); average 1-based rank.
        const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

namespace {

double pearson(std::span<const double> xs, std::span<const double> ys) {
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        throw ArgumentError("correlation undefined: zero variance in one input");
    return sxy / std::sqrt(sxx * syy);
}

double tail_p(double statistic_p_greater, Tail tail, double p_two) {
    switch (tail) {
        case Tail::TwoSided: return p_two;
        case Tail::Greater: return statistic_p_greater;
        case Tail::Less: return 1.0 - statistic_p_greater;
    }
    return p_two;
}

}  // namespace

Correlation spearman(std::span<const double> xs, std::span<const double> ys, Tail tail) {
    if (xs.size() != ys.size()) throw ArgumentError("spearman: size mismatch");
    const std::size_t n = xs.size();
    if (n < 3) throw ArgumentError("spearman: need at least 3 observations");

    const std::vector<double> rx = fractional_ranks(xs);
    const std::vector<double> ry = fractional_ranks(ys);
    const double rho = pearson(rx, ry);

    Correlation out;
    out.rho = rho;
    out.n = n;

    if (n < 10) {
        // Exact permutation distribution of rho under independence, holding
        // the observed tie pattern of xs fixed and permuting ys.
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::vector<double> py(n);
        std::size_t total = 0, ge = 0, le = 0, abs_ge = 0;
        const double eps = 1e-12;
        do {
            for (std::size_t i = 0; i < n; ++i) py[i] = ry[perm[i]];
            const double r = pearson(rx, py);
            ++total;
            if (r >= rho - eps) ++ge;
            if (r <= rho + eps) ++le;
            if (std::abs(r) >= std::abs(rho) - eps) ++abs_ge;
        } while (std::next_permutation(perm.begin(), perm.end()));
        const double p_greater = static_cast<double>(ge) / static_cast<double>(total);
        const double p_less = static_cast<double>(le) / static_cast<double>(total);
        const double p_two = static_cast<double>(abs_ge) / static_cast<double>(total);
        switch (tail) {
            case Tail::TwoSided: out.p_value = std::min(1.0, p_two); break;
            case Tail::Greater: out.p_value = p_greater; break;
            case Tail::Less: out.p_value = p_less; break;
        }
        return out;
    }

    if (std::abs(rho) >= 1.0) {
        out.p_value = 0.0;
        return out;
    }
    const double df = static_cast<double>(n - 2);
    const double t = rho * std::sqrt(df / (1.0 - rho * rho));
    const boost::math::students_t_distribution<double> dist(df);
    const double p_greater = 1.0 - boost::math::cdf(dist, t);
    const double p_two = 2.0 * boost::math::cdf(dist, -std::abs(t));
    out.p_value = std::min(1.0, tail_p(p_greater, tail, p_two));
    return out;
}

double t_test_p(std::span<const double> xs, Tail tail) {
    const std::size_t n = xs.size();
    if (n < 2) throw ArgumentError("t_test_p: need at least 2 observations");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) {
        // Degenerate sample: every value identical. The test collapses to the
        // sign of the common value.
        switch (tail) {
            case Tail::Greater: return m > 0.0 ? 0.0 : 1.0;
            case Tail::Less: return m < 0.0 ? 0.0 : 1.0;
            case Tail::TwoSided: return m != 0.0 ? 0.0 : 1.0;
        }
    }
    const double t = m / (sd / std::sqrt(static_cast<double>(n)));
    const boost::math::students_t_distribution<double> dist(static_cast<double>(n - 1));
    const double p_greater = 1.0 - boost::math::cdf(dist, t);
    const double p_two = 2.0 * boost::math::cdf(dist, -std::abs(t));
    return std::min(1.0, tail_p(p_greater, tail, p_two));
}

}  // namespace hyperdisc::stats
