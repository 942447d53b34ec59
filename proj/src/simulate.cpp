#include "fastarma/bench/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "fastarma/acvf.hpp"
#include "fastarma/bench/parallel.hpp"
#include "fastarma/param_transform.hpp"

namespace fastarma::bench {

void SimConfig::validate() const
{
    spec.validate();
    if (!is_causal(spec.phi))
        throw DomainError("simulation requires a causal AR polynomial");
    if (n < 1)
        throw DomainError("series length must be positive");
    if (replications < 1)
        throw DomainError("replications must be at least 1");
}

namespace {

// Stationary covariance of (w_0, w_-1, .., w_{1-p}, a_0, .., a_{1-q}) with
// w = z - mu: Cov(w_s, a_t) = sigma2 psi_{s-t} for s >= t, else 0.
Matrix<double> state_covariance(const ArmaSpec<double>& spec)
{
    const Index p = spec.p(), q = spec.q();
    const AcvfSequence<double> acvf = arma_acvf(spec, std::max<Index>(p, 1));
    const Vector<double> psi = psi_weights(spec, std::max(p, q) + 1);
    Matrix<double> cov = Matrix<double>::Zero(p + q, p + q);
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < p; ++j)
            cov(i, j) = acvf[std::abs(i - j)];
    for (Index j = 0; j < q; ++j)
        cov(p + j, p + j) = spec.sigma2;
    for (Index i = 0; i < p; ++i) {
        for (Index j = 0; j < q; ++j) {
            // w_{-i} against a_{-j}
            const Index lag = j - i;
            const double v = lag >= 0 ? spec.sigma2 * psi(lag) : 0.0;
            cov(i, p + j) = v;
            cov(p + j, i) = v;
        }
    }
    return cov;
}

}  // namespace

Vector<double> simulate_series(const ArmaSpec<double>& spec, Index n, Engine& engine)
{
    const Index p = spec.p(), q = spec.q();
    const double sigma = std::sqrt(spec.sigma2);
    std::normal_distribution<double> normal(0.0, 1.0);

    Vector<double> w_past = Vector<double>::Zero(p);
    Vector<double> a_past = Vector<double>::Zero(q);
    if (p + q > 0) {
        const Eigen::SelfAdjointEigenSolver<Matrix<double>> eig(state_covariance(spec));
        const Vector<double> scale = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        Vector<double> u(p + q);
        for (Index i = 0; i < p + q; ++i)
            u(i) = normal(engine);
        const Vector<double> state = eig.eigenvectors() * scale.asDiagonal() * u;
        w_past = state.head(p);
        a_past = state.tail(q);
    }

    Vector<double> z(n);
    for (Index t = 0; t < n; ++t) {
        const double a = sigma * normal(engine);
        double w = a;
        for (Index i = 0; i < p; ++i)
            w += spec.phi(i) * w_past(i);
        for (Index j = 0; j < q; ++j)
            w -= spec.theta(j) * a_past(j);
        for (Index i = p - 1; i > 0; --i)
            w_past(i) = w_past(i - 1);
        if (p > 0)
            w_past(0) = w;
        for (Index j = q - 1; j > 0; --j)
            a_past(j) = a_past(j - 1);
        if (q > 0)
            a_past(0) = a;
        z(t) = spec.mu + w;
    }
    return z;
}

std::vector<TimeSeries<double>> simulate_arma(const SimConfig& config, std::uint64_t cell)
{
    config.validate();
    std::vector<Vector<double>> paths(static_cast<std::size_t>(config.replications));
    parallel_for(paths.size(), config.parallel, [&](std::size_t i) {
        Engine engine = make_engine(config.seed, cell, i);
        paths[i] = simulate_series(config.spec, config.n, engine);
    });
    std::vector<TimeSeries<double>> out;
    out.reserve(paths.size());
    for (auto& v : paths)
        out.emplace_back(std::move(v));
    return out;
}

}  // namespace fastarma::bench
