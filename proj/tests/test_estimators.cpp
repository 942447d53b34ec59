#include <doctest.h>

#include <random>

#include "fastarma/estimators.hpp"
#include "oracles.hpp"

using namespace fastarma;

namespace {

Vector<double> vec(std::initializer_list<double> xs)
{
    Vector<double> v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (double x : xs)
        v(i++) = x;
    return v;
}

}  // namespace

TEST_CASE("levinson matches a dense yule-walker solve")
{
    std::mt19937_64 g(1);
    for (int r = 1; r <= 8; ++r) {
        const Vector<double> theta = oracle::random_causal(2, g, 0.8);
        const Vector<double> gamma = oracle::spectral_acvf(vec({0.4}), theta, r);
        const auto lev = levinson_durbin(gamma, r);
        const Vector<double> ref = oracle::toeplitz(gamma, r).ldlt().solve(Vector<double>(gamma.tail(r)));
        CHECK((lev.phi - ref).cwiseAbs().maxCoeff() < 1e-10);
        // prediction variance = det(Gamma_{r+1}) / det(Gamma_r)
        const double v = oracle::toeplitz(gamma, r + 1).determinant() / oracle::toeplitz(gamma, r).determinant();
        CHECK(lev.variance == doctest::Approx(v).epsilon(1e-8));
    }
}

TEST_CASE("levinson rejects non positive definite sequences")
{
    CHECK_THROWS_AS(levinson_durbin(vec({1.0, 1.0, 1.0}), 2), NumericalError);
    CHECK_THROWS_AS(levinson_durbin(vec({0.0, 0.5}), 1), DomainError);
}

TEST_CASE("long ar order rule")
{
    CHECK(long_ar_order(20) == 5);
    CHECK(long_ar_order(100) == 20);
    CHECK(long_ar_order(1000) == 30);
    CHECK(long_ar_order(10000) == 40);
}

TEST_CASE("burg reflection coefficients stay inside the unit interval")
{
    std::mt19937_64 g(2);
    for (int trial = 0; trial < 20; ++trial) {
        const Vector<double> z = oracle::arma_path(vec({0.95}), vec({-0.9}), 3.0, 60 + trial, g);
        const auto fit = burg(TimeSeries<double>(z), 8);
        CHECK(fit.zeta.cwiseAbs().maxCoeff() < 1.0);
        CHECK(oracle::stationary(fit.phi));
        CHECK(fit.sigma2 > 0.0);
    }
}

TEST_CASE("burg recovers an ar(2)")
{
    std::mt19937_64 g(3);
    const Vector<double> z = oracle::arma_path(vec({0.75, -0.5}), Vector<double>(0), 0.0, 20000, g);
    const auto fit = burg(TimeSeries<double>(z), 2);
    CHECK(fit.phi(0) == doctest::Approx(0.75).epsilon(0.03));
    CHECK(fit.phi(1) == doctest::Approx(-0.5).epsilon(0.03));
    CHECK(fit.sigma2 == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("burg input checks")
{
    CHECK_THROWS_AS(burg(TimeSeries<double>(vec({1.0, 2.0})), 2), OrderTooLargeError);
    CHECK_THROWS_AS(burg(TimeSeries<double>(vec({1.0, 1.0, 1.0})), 1), DegenerateDataError);
}

TEST_CASE("hannan-rissanen and durbin mse decrease with n")
{
    const Vector<double> phi = vec({0.7}), theta = vec({-0.4});
    double prev_hr = 1e300, prev_du = 1e300;
    for (int n : {100, 400, 1600}) {
        std::mt19937_64 g(100 + n);
        double mse_hr = 0, mse_du = 0;
        const int reps = 200;
        for (int k = 0; k < reps; ++k) {
            const TimeSeries<double> z(oracle::arma_path(phi, theta, 1.0, n, g));
            const auto hr = hannan_rissanen(z, 1, 1);
            mse_hr += std::pow(hr.spec.phi(0) - 0.7, 2) + std::pow(hr.spec.theta(0) + 0.4, 2);
            const TimeSeries<double> m(oracle::arma_path(Vector<double>(0), theta, 0.0, n, g));
            mse_du += std::pow(durbin_ma(m, 1)(0) + 0.4, 2);
        }
        CHECK(mse_hr < prev_hr);
        CHECK(mse_du < prev_du);
        prev_hr = mse_hr;
        prev_du = mse_du;
    }
    CHECK(prev_hr / 200 < 0.01);
    CHECK(prev_du / 200 < 0.01);
}

TEST_CASE("durbin estimates are invertible")
{
    std::mt19937_64 g(4);
    for (int trial = 0; trial < 30; ++trial) {
        const TimeSeries<double> z(oracle::arma_path(Vector<double>(0), vec({0.99}), 0.0, 50, g));
        const Vector<double> th = durbin_ma(z, 2);
        CHECK(oracle::stationary(th));
    }
}

TEST_CASE("hannan-rissanen on a pure ar is least squares")
{
    std::mt19937_64 g(5);
    const TimeSeries<double> z(oracle::arma_path(vec({0.6}), Vector<double>(0), 2.0, 3000, g));
    const auto hr = hannan_rissanen(z, 1, 0);
    CHECK(hr.long_order == 0);
    CHECK(hr.spec.phi(0) == doctest::Approx(0.6).epsilon(0.05));
    CHECK(hr.spec.mu == doctest::Approx(2.0).epsilon(0.1));
    CHECK(hr.causal);
}

TEST_CASE("hannan-rissanen needs enough data")
{
    CHECK_THROWS_AS(hannan_rissanen(TimeSeries<double>(vec({1, 2, 3, 4, 5})), 1, 1), OrderTooLargeError);
}
