#include <doctest.h>

#include <cmath>

#include "fastarma/optimize.hpp"

using namespace fastarma;

TEST_CASE("simplex finds an interior quadratic minimum")
{
    auto f = [](const Vector<double>& x) { return std::pow(x(0) - 0.3, 2) + 2 * std::pow(x(1) + 0.4, 2); };
    const auto res = minimize_simplex<double>(f, Vector<double>::Zero(2), Vector<double>::Constant(2, -1),
                                              Vector<double>::Constant(2, 1));
    CHECK(res.converged);
    CHECK(res.x(0) == doctest::Approx(0.3).epsilon(1e-3));
    CHECK(res.x(1) == doctest::Approx(-0.4).epsilon(1e-3));
}

TEST_CASE("simplex respects the box")
{
    int outside = 0;
    auto f = [&](const Vector<double>& x) {
        if (x.cwiseAbs().maxCoeff() > 0.5)
            ++outside;
        return std::pow(x(0) - 2.0, 2) + std::pow(x(1), 2);
    };
    const auto res = minimize_simplex<double>(f, Vector<double>::Zero(2), Vector<double>::Constant(2, -0.5),
                                              Vector<double>::Constant(2, 0.5));
    CHECK(outside == 0);
    CHECK(res.x(0) == doctest::Approx(0.5));
}

TEST_CASE("non-finite objective values are treated as +inf")
{
    auto f = [](const Vector<double>& x) { return x(0) < 0 ? std::nan("") : std::pow(x(0) - 0.2, 2); };
    const auto res = minimize_simplex<double>(f, Vector<double>::Constant(1, 0.5), Vector<double>::Constant(1, -1),
                                              Vector<double>::Constant(1, 1));
    CHECK(res.x(0) == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("evaluation budget is honoured")
{
    auto f = [](const Vector<double>& x) { return x.squaredNorm(); };
    SimplexOptions o;
    o.max_evaluations = 7;
    const auto res = minimize_simplex<double>(f, Vector<double>::Constant(3, 0.9), Vector<double>::Constant(3, -1),
                                              Vector<double>::Constant(3, 1), o);
    CHECK_FALSE(res.converged);
    CHECK(res.evaluations <= 7 + 3);
}

TEST_CASE("zero-dimensional problem")
{
    auto f = [](const Vector<double>&) { return 4.0; };
    const auto res = minimize_simplex<double>(f, Vector<double>(0), Vector<double>(0), Vector<double>(0));
    CHECK(res.converged);
    CHECK(res.value == 4.0);
}
