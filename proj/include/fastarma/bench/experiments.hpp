#pragma once

#include <cstdint>
#include <vector>

#include "fastarma/bench/efficiency.hpp"
#include "fastarma/bench/report.hpp"
#include "fastarma/types.hpp"

namespace fastarma::bench {

/// KL discrepancy between MA(1) and its AR(r) approximations (MMSE and
/// truncated pi) for each r. Columns: r, method, kl, status.
Table kl_table(const ArmaSpec<double>& spec, Index n, const std::vector<Index>& orders);

/// MA(1) theta = 0.95, n = 200, r = 10..50.
Table table1();

struct Table3Cell {
    double phi = 0;
    double theta = 0;
    Index n = 0;
};

/// The ARMA(1,1) grid: phi, theta in {-0.95, -0.9, -0.5, 0, 0.5, 0.9, 0.95},
/// n in {50, 100, 200}.
std::vector<Table3Cell> table3_grid();

struct Table3Options {
    int replications = 1000;
    std::uint64_t seed = 20070101;
    unsigned workers = 0;
    /// Approximation order, lowered to n/2 for short series.
    Index r = 30;
    bool mean_mle = true;
    bool exact = true;
};

/// Efficiency of the sample mean against the BLUE (exact), MeanMLE and the
/// exact Gaussian MLE (both Monte Carlo, with bootstrap intervals).
std::vector<EfficiencyReport> table3(const std::vector<Table3Cell>& cells, const Table3Options& opts = {});

Table efficiency_table(const std::vector<EfficiencyReport>& reports);

struct ScalingRow {
    Index n = 0;
    long long flops_per_eval = 0;
    double eval_seconds = 0;
    double setup_seconds = 0;
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    bool flops_constant = false;
    /// Per-evaluation wall time at the largest n over that at 10^4 (or the
    /// smallest n when 10^4 is not in the grid).
    double wall_ratio = 0;
    /// (setup(n_k) / setup(n_{k-1})) / (n_k / n_{k-1}) for the two largest n.
    double setup_ratio = 0;

    Table table() const;
};

ScalingReport scaling_check(const std::vector<Index>& ns = {1000, 10000, 100000, 1000000}, int evals = 10000,
                            Index r = 30, std::uint64_t seed = 1);

/// I(r) for MA(1) theta = 0.9, n = 200, r = 1..50. Columns: r, kl_mmse, kl_truncated.
Table figure1();

struct Figure2Options {
    std::vector<double> thetas = {-1.0, -0.9, -0.5, -0.3, 0.0, 0.3, 0.5, 0.9, 1.0};
    std::vector<Index> ns = {50, 100, 200, 400};
    int replications = 1000;
    std::uint64_t seed = 20070102;
    unsigned workers = 0;
    Index r = 30;
};

/// Efficiency of SampleMean and Durbin against the exact MLE for theta_1
/// of an MA(1).
std::vector<EfficiencyReport> figure2(const Figure2Options& opts = {});

/// I(r) for fractionally differenced white noise at n = 200.
/// Columns: d, r, kl.
Table figure3(const std::vector<double>& ds = {0.1, 0.2, 0.3, 0.4}, Index n = 200,
              const std::vector<Index>& orders = {});

}  // namespace fastarma::bench
