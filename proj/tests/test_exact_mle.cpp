#include <doctest.h>

#include <random>

#include "fastarma/exact_mle.hpp"
#include "oracles.hpp"

using namespace fastarma;

TEST_CASE("levinson profile likelihood equals the dense gaussian likelihood")
{
    std::mt19937_64 g(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int p = trial % 3, q = (trial / 3) % 3;
        const Vector<double> phi = oracle::random_causal(p, g, 0.8);
        const Vector<double> theta = oracle::random_causal(q, g, 0.8);
        const int n = 10 + 7 * trial;
        const Vector<double> z = oracle::arma_path(phi, theta, 1.0, n, g);
        const auto acvf = arma_acvf(ArmaSpec<double>{phi, theta, 0.0, 1.0}, n - 1);
        const Matrix<double> gamma = oracle::toeplitz(oracle::spectral_acvf(phi, theta, n - 1), n);

        const auto fixed = exact_profile_loglik(TimeSeries<double>(z), acvf, std::optional<double>(0.7));
        CHECK(fixed.loglik == doctest::Approx(oracle::profiled_loglik(z, 0.7, gamma)).epsilon(1e-8));

        const auto gls = exact_profile_loglik(TimeSeries<double>(z), acvf);
        const double mu = oracle::gls_mean(z, gamma);
        CHECK(gls.mu == doctest::Approx(mu).epsilon(1e-8));
        CHECK(gls.loglik == doctest::Approx(oracle::profiled_loglik(z, mu, gamma)).epsilon(1e-8));
    }
}

TEST_CASE("profile likelihood relates to the full gaussian density")
{
    std::mt19937_64 g(4);
    const Vector<double> phi = Vector<double>::Constant(1, 0.5);
    const Vector<double> z = oracle::arma_path(phi, Vector<double>(0), 0.0, 30, g);
    const auto acvf = arma_acvf(ArmaSpec<double>::ar(phi), 29);
    const auto prof = exact_profile_loglik(TimeSeries<double>(z), acvf, std::optional<double>(0.0));
    const Matrix<double> gamma = oracle::toeplitz(oracle::psi_acvf(phi, Vector<double>(0), 29), 30);
    const double full = oracle::gaussian_loglik(z, 0.0, prof.sigma2 * gamma);
    CHECK(full == doctest::Approx(prof.loglik - 15.0 * (std::log(2.0 * std::numbers::pi) + 1.0)).epsilon(1e-10));
}

TEST_CASE("exact mle recovers an ma(1)")
{
    std::mt19937_64 g(5);
    const Vector<double> theta = Vector<double>::Constant(1, 0.6);
    const TimeSeries<double> z(oracle::arma_path(Vector<double>(0), theta, 2.0, 400, g));
    const FitResult<double> f = fit_arma_exact(z, 0, 1);
    CHECK(f.converged);
    CHECK(f.theta(0) == doctest::Approx(0.6).epsilon(0.1));
    CHECK(f.mu == doctest::Approx(2.0).epsilon(0.05));
}
