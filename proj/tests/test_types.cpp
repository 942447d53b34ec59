#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "fastarma/types.hpp"

using namespace fastarma;

TEST_CASE("time series rejects empty and non-finite input")
{
    CHECK_THROWS_AS(TimeSeries<double>(Vector<double>(0)), DomainError);
    Vector<double> v(3);
    v << 1.0, std::numeric_limits<double>::quiet_NaN(), 2.0;
    CHECK_THROWS_AS(TimeSeries<double>{v}, DomainError);
    v(1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(TimeSeries<double>{v}, DomainError);
}

TEST_CASE("time series exposes values and mean")
{
    const TimeSeries<double> z(std::vector<double>{1.0, 2.0, 6.0});
    CHECK(z.size() == 3);
    CHECK(z[2] == 6.0);
    CHECK(z.mean() == doctest::Approx(3.0));
}

TEST_CASE("arma spec validation")
{
    CHECK_NOTHROW(ArmaSpec<double>::arma11(0.5, 0.3).validate());
    CHECK_THROWS_AS(ArmaSpec<double>::white_noise(0.0).validate(), DomainError);
    CHECK_THROWS_AS(ArmaSpec<double>::white_noise(-1.0).validate(), DomainError);
    auto s = ArmaSpec<double>::arma11(0.5, 0.3);
    s.mu = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(s.validate(), DomainError);
    CHECK(ArmaSpec<double>::arma11(0.5, 0.3).p() == 1);
    CHECK(ArmaSpec<double>::ma(Vector<double>::Zero(2)).q() == 2);
}

TEST_CASE("order errors are domain errors")
{
    CHECK_THROWS_AS(throw OrderTooLargeError("x"), DomainError);
    CHECK_THROWS_AS(throw DegenerateDataError("x"), Error);
    CHECK_THROWS_AS(throw NumericalError("x"), Error);
}

TEST_CASE("enum names")
{
    CHECK(std::string(to_string(MeanMode::SampleMean)) == "sample");
    CHECK(std::string(to_string(MeanMode::MeanMLE)) == "mle");
    CHECK(std::string(to_string(ArmaInit::HRInit)) == "hr");
}
