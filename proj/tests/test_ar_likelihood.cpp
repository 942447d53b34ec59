#include <doctest.h>

#include <random>

#include "fastarma/ar_fit.hpp"
#include "fastarma/ar_likelihood.hpp"
#include "oracles.hpp"

using namespace fastarma;

namespace {

Vector<double> ar_series(const Vector<double>& phi, int n, double mu, std::mt19937_64& g)
{
    std::normal_distribution<double> N(0.0, 1.0);
    const int p = static_cast<int>(phi.size());
    Vector<double> w = Vector<double>::Zero(n + 500);
    for (int t = 0; t < n + 500; ++t) {
        double v = N(g);
        for (int j = 1; j <= p && t - j >= 0; ++j)
            v += phi(j - 1) * w(t - j);
        w(t) = v;
    }
    return w.tail(n).array() + mu;
}

}  // namespace

TEST_CASE("quadratic form equals the dense sum of squares")
{
    std::mt19937_64 g(2);
    for (int trial = 0; trial < 40; ++trial) {
        const int p = 1 + trial % 3;
        const int n = 2 * p + trial;
        const Vector<double> phi = oracle::random_causal(p, g);
        const Vector<double> z = ar_series(phi, n, 1.0, g);
        const auto state = build_champernowne(TimeSeries<double>(z), p, 0.8);
        // y' Gamma^{-1} y with unit innovation variance
        const Matrix<double> gamma = oracle::toeplitz(oracle::psi_acvf(phi, Vector<double>(0), n), n);
        const Vector<double> y = z.array() - 0.8;
        const double ref = y.dot(gamma.ldlt().solve(y));
        CHECK(quadratic_form(state, phi) == doctest::Approx(ref).epsilon(1e-9));
    }
}

TEST_CASE("concentrated likelihood equals the profiled dense gaussian likelihood")
{
    std::mt19937_64 g(9);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int p = trial % 4;
        const int n = std::max(2 * p, 5) + trial * 2;
        const Vector<double> phi = oracle::random_causal(p, g);
        const Vector<double> z = ar_series(phi, n, 0.5, g);
        const double mu = 0.5 + U(g);
        const LikelihoodEvaluator<double> ev(TimeSeries<double>(z), p, mu);
        const double lc = ev(ar_to_pacf(phi)).loglik;
        const Matrix<double> gamma = oracle::toeplitz(oracle::psi_acvf(phi, Vector<double>(0), n), n);
        CHECK(lc == doctest::Approx(oracle::profiled_loglik(z, mu, gamma)).epsilon(1e-10));
    }
}

TEST_CASE("evaluator at another mean")
{
    std::mt19937_64 g(1);
    Vector<double> phi(2);
    phi << 0.5, -0.3;
    const Vector<double> z = ar_series(phi, 80, 2.0, g);
    const TimeSeries<double> ts(z);
    const LikelihoodEvaluator<double> ev(ts, 2, ts.mean());
    const auto zeta = ar_to_pacf(phi);
    const double a = concentrated_loglik(ev, zeta, 2.3).loglik;
    const double b = LikelihoodEvaluator<double>(ts, 2, 2.3)(zeta).loglik;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("per-evaluation flops do not depend on n")
{
    std::mt19937_64 g(3);
    Vector<double> phi(3);
    phi << 0.3, 0.2, -0.1;
    const LikelihoodEvaluator<double> small(TimeSeries<double>(ar_series(phi, 1000, 0, g)), 3, 0.0);
    const LikelihoodEvaluator<double> large(TimeSeries<double>(ar_series(phi, 200000, 0, g)), 3, 0.0);
    small(ar_to_pacf(phi));
    large(ar_to_pacf(phi));
    large(PacfVector<double>(Vector<double>::Constant(3, 0.2)));
    CHECK(small.flops_per_eval() == large.flops_per_eval());
    CHECK(large.counter().calls() == 2);
    // moving the mean is charged separately
    const auto moved = large.with_mean(0.1);
    moved(ar_to_pacf(phi));
    CHECK(large.flops_per_eval() == small.flops_per_eval());
    CHECK(large.remean_counter().calls() == 1);
}

TEST_CASE("degenerate data")
{
    const TimeSeries<double> flat(Vector<double>(Vector<double>::Constant(10, 4.0)));
    const LikelihoodEvaluator<double> ev(flat, 1, 4.0);
    CHECK_THROWS_AS(ev(PacfVector<double>(Vector<double>::Constant(1, 0.2))), DegenerateDataError);
}

TEST_CASE("ar fit recovers an ar(2)")
{
    std::mt19937_64 g(12);
    Vector<double> phi(2);
    phi << 0.6, -0.3;
    const TimeSeries<double> z(ar_series(phi, 5000, 1.5, g));
    for (auto mode : {MeanMode::SampleMean, MeanMode::MeanMLE}) {
        const FitResult<double> f = fit_ar(z, 2, mode);
        CHECK(f.converged);
        CHECK(std::abs(f.phi(0) - 0.6) < 0.05);
        CHECK(std::abs(f.phi(1) + 0.3) < 0.05);
        CHECK(std::abs(f.mu - 1.5) < 0.1);
        CHECK(f.sigma2 == doctest::Approx(1.0).epsilon(0.08));
    }
}

TEST_CASE("ar fit maximizes the dense likelihood")
{
    std::mt19937_64 g(14);
    Vector<double> phi(1);
    phi << 0.7;
    const Vector<double> z = ar_series(phi, 60, 0.0, g);
    const TimeSeries<double> ts(z);
    const FitResult<double> f = fit_ar(ts, 1);
    auto dense = [&](double a) {
        Vector<double> c(1);
        c << a;
        return oracle::profiled_loglik(z, ts.mean(), oracle::toeplitz(oracle::psi_acvf(c, Vector<double>(0), 60), 60));
    };
    CHECK(f.loglik == doctest::Approx(dense(f.phi(0))).epsilon(1e-10));
    for (double d : {-1e-3, 1e-3})
        CHECK(dense(f.phi(0) + d) <= f.loglik + 1e-9);
}

TEST_CASE("ar fit order boundary")
{
    const TimeSeries<double> z(Vector<double>(Vector<double>::LinSpaced(6, 0.0, 1.0).array().sin()));
    CHECK_NOTHROW(fit_ar(z, 3));
    CHECK_THROWS_AS(fit_ar(z, 4), OrderTooLargeError);
}
