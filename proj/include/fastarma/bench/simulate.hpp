#pragma once

#include <cstdint>
#include <vector>

#include "fastarma/bench/rng.hpp"
#include "fastarma/types.hpp"

namespace fastarma::bench {

struct SimConfig {
    ArmaSpec<double> spec = ArmaSpec<double>::white_noise();
    Index n = 100;
    int replications = 1;
    std::uint64_t seed = 1;
    /// 0 selects the hardware concurrency.
    unsigned parallel = 0;

    void validate() const;
};

/// One stationary Gaussian ARMA path of length n. The p past values and q
/// past innovations are drawn jointly from their stationary covariance,
/// so the path has the exact stationary law from t = 1.
Vector<double> simulate_series(const ArmaSpec<double>& spec, Index n, Engine& engine);

/// config.replications independent paths; path i uses substream (cell, i).
std::vector<TimeSeries<double>> simulate_arma(const SimConfig& config, std::uint64_t cell = 0);

}  // namespace fastarma::bench
