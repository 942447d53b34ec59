#include <doctest.h>

#include <cmath>
#include <random>

#include "fastarma/acvf.hpp"
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

TEST_CASE("ar(1) closed form")
{
    const auto acvf = arma_acvf(ArmaSpec<double>::ar(vec({0.6}), 2.0), 5);
    for (Index k = 0; k <= 5; ++k)
        CHECK(acvf[k] == doctest::Approx(2.0 * std::pow(0.6, k) / (1 - 0.36)));
}

TEST_CASE("ma(1) closed form and zero beyond lag q")
{
    const auto acvf = arma_acvf(ArmaSpec<double>::ma(vec({0.5})), 4);
    CHECK(acvf[0] == doctest::Approx(1.25));
    CHECK(acvf[1] == doctest::Approx(-0.5));
    CHECK(acvf[2] == doctest::Approx(0.0));
    CHECK(acvf[9] == 0.0);
}

TEST_CASE("arma(1,1) closed form")
{
    const double phi = 0.9, theta = 0.5;
    const auto acvf = arma_acvf(ArmaSpec<double>::arma11(phi, theta), 3);
    const double g0 = (1 - 2 * phi * theta + theta * theta) / (1 - phi * phi);
    const double g1 = (1 - phi * theta) * (phi - theta) / (1 - phi * phi);
    CHECK(acvf[0] == doctest::Approx(g0));
    CHECK(acvf[1] == doctest::Approx(g1));
    CHECK(acvf[2] == doctest::Approx(phi * g1));
}

TEST_CASE("general arma matches spectral integration")
{
    std::mt19937_64 g(21);
    for (int trial = 0; trial < 20; ++trial) {
        const int p = trial % 4, q = (trial / 2) % 4;
        const Vector<double> phi = oracle::random_causal(p, g, 0.8);
        const Vector<double> theta = oracle::random_causal(q, g, 0.8);
        const double sigma2 = 0.5 + trial * 0.1;
        const auto acvf = arma_acvf(ArmaSpec<double>{phi, theta, 0.0, sigma2}, 12);
        const Vector<double> ref = oracle::spectral_acvf(phi, theta, 12, sigma2);
        CHECK((acvf.gamma - ref).cwiseAbs().maxCoeff() < 1e-8 * ref(0));
    }
}

TEST_CASE("non-causal model is rejected")
{
    CHECK_THROWS_AS(arma_acvf(ArmaSpec<double>::ar(vec({1.1})), 3), DomainError);
    CHECK_THROWS_AS(arma_acvf(ArmaSpec<double>::ar(vec({0.5, 0.6})), 3), DomainError);
}

TEST_CASE("pi weights of arma(1,1)")
{
    const Vector<double> pi = pi_weights(ArmaSpec<double>::arma11(0.9, 0.5), 3);
    CHECK(pi(0) == doctest::Approx(0.4));
    CHECK(pi(1) == doctest::Approx(0.2));
    CHECK(pi(2) == doctest::Approx(0.1));
}

TEST_CASE("pi weights invert the model")
{
    // theta(B) pi(B) = phi(B): convolution check with pi(B) = 1 - sum pi_k B^k
    const ArmaSpec<double> spec{vec({0.3, -0.2}), vec({0.4, 0.25}), 0.0, 1.0};
    const int r = 30;
    const Vector<double> pi = pi_weights(spec, r);
    Vector<double> pb(r + 1), tb = Vector<double>::Zero(r + 1), prod = Vector<double>::Zero(r + 1);
    pb(0) = 1;
    pb.tail(r) = -pi;
    tb(0) = 1;
    tb(1) = -0.4;
    tb(2) = -0.25;
    for (int i = 0; i <= r; ++i)
        for (int j = 0; i + j <= r; ++j)
            prod(i + j) += tb(i) * pb(j);
    CHECK(prod(0) == doctest::Approx(1.0));
    CHECK(prod(1) == doctest::Approx(-0.3));
    CHECK(prod(2) == doctest::Approx(0.2));
    CHECK(prod.tail(r - 2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pi weights need invertibility")
{
    CHECK_THROWS_AS(pi_weights(ArmaSpec<double>::ma(vec({1.0})), 5), DomainError);
}

TEST_CASE("psi weights of arma(1,1)")
{
    const Vector<double> psi = psi_weights(ArmaSpec<double>::arma11(0.9, 0.5), 3);
    CHECK(psi(0) == 1.0);
    CHECK(psi(1) == doctest::Approx(0.4));
    CHECK(psi(2) == doctest::Approx(0.36));
}

TEST_CASE("u-process autocovariances")
{
    const auto u = u_process_acvf(vec({0.5, 0.2}));
    CHECK(u[0] == doctest::Approx(1.29));
    CHECK(u[1] == doctest::Approx(-0.4));
    CHECK(u[2] == doctest::Approx(-0.2));
    CHECK(u[3] == 0.0);
}

TEST_CASE("fractionally differenced white noise")
{
    // d = 0 is white noise
    const auto w = fdwn_acvf(0.0, 3);
    CHECK(w[0] == doctest::Approx(1.0));
    CHECK(w[1] == doctest::Approx(0.0));
    // rho_1 = d / (1 - d); gamma_0 = Gamma(1-2d) / Gamma(1-d)^2
    const double d = 0.3;
    const auto f = fdwn_acvf(d, 2);
    CHECK(f[0] == doctest::Approx(std::tgamma(1 - 2 * d) / std::pow(std::tgamma(1 - d), 2)));
    CHECK(f[1] / f[0] == doctest::Approx(d / (1 - d)));
    CHECK(f[2] / f[1] == doctest::Approx((1 + d) / (2 - d)));
    CHECK_THROWS_AS(fdwn_acvf(0.5, 3), DomainError);
}

TEST_CASE("toeplitz matrix of an autocovariance sequence")
{
    const auto acvf = arma_acvf(ArmaSpec<double>::ar(vec({0.5})), 2);
    const Matrix<double> t = acvf.toeplitz(4);
    CHECK(t(0, 3) == 0.0);
    CHECK(t(2, 1) == doctest::Approx(acvf[1]));
    CHECK(t.isApprox(t.transpose()));
}
