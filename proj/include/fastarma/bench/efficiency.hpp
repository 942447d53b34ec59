#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fastarma::bench {

inline constexpr int kBootstrapResamples = 2000;

struct Interval {
    double lo = 0;
    double hi = 0;
};

/// Paired squared errors of two estimators over one replication set.
struct PairedErrors {
    std::vector<double> estimator;
    std::vector<double> reference;

    std::size_t size() const { return estimator.size(); }
    void add(double est_error, double ref_error);
};

/// MSE(reference) / MSE(estimator). Values below 1 mean the estimator
/// loses to the reference.
double mse_ratio(const PairedErrors& e);

/// Percentile bootstrap interval for mse_ratio, resampling replications
/// (pairs kept together).
Interval bootstrap_ratio_ci(const PairedErrors& e, std::uint64_t seed, std::uint64_t cell,
                            int resamples = kBootstrapResamples, double level = 0.95);

struct EfficiencyReport {
    double phi = 0;
    double theta = 0;
    long long n = 0;
    /// Efficiency of `estimator` relative to `reference`.
    std::string estimator;
    std::string reference;
    double efficiency = 0;
    Interval ci;
    long long replications = 0;
    /// Replications dropped because one of the two fits failed.
    long long failures = 0;
    std::string flag;
};

}  // namespace fastarma::bench
