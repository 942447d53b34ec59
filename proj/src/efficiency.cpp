#include "fastarma/bench/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fastarma/bench/rng.hpp"

namespace fastarma::bench {

void PairedErrors::add(double est_error, double ref_error)
{
    estimator.push_back(est_error * est_error);
    reference.push_back(ref_error * ref_error);
}

double mse_ratio(const PairedErrors& e)
{
    if (e.size() == 0)
        throw std::invalid_argument("no replications");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        num += e.reference[i];
        den += e.estimator[i];
    }
    return num / den;
}

Interval bootstrap_ratio_ci(const PairedErrors& e, std::uint64_t seed, std::uint64_t cell, int resamples,
                            double level)
{
    const std::size_t m = e.size();
    if (m == 0)
        throw std::invalid_argument("no replications");
    Engine engine = make_engine(seed, cell, kBootstrapStream);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(resamples));
    for (int b = 0; b < resamples; ++b) {
        double num = 0, den = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t i = pick(engine);
            num += e.reference[i];
            den += e.estimator[i];
        }
        stats.push_back(num / den);
    }
    std::sort(stats.begin(), stats.end());
    const double alpha = (1.0 - level) / 2.0;
    auto quantile = [&](double prob) {
        const double pos = prob * static_cast<double>(stats.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, stats.size() - 1);
        return stats[lo] + (pos - static_cast<double>(lo)) * (stats[hi] - stats[lo]);
    };
    Interval out{quantile(alpha), quantile(1.0 - alpha)};
    const double point = mse_ratio(e);
    out.lo = std::min(out.lo, point);
    out.hi = std::max(out.hi, point);
    return out;
}

}  // namespace fastarma::bench
