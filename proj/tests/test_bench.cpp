#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fastarma/bench/efficiency.hpp"
#include "fastarma/bench/experiments.hpp"
#include "fastarma/bench/report.hpp"
#include "fastarma/bench/simulate.hpp"
#include "fastarma/acvf.hpp"

using namespace fastarma;
using namespace fastarma::bench;

namespace {

double lag_acf(const Vector<double>& z, int k)
{
    const double m = z.mean();
    double c0 = 0, ck = 0;
    for (Index t = 0; t < z.size(); ++t)
        c0 += (z(t) - m) * (z(t) - m);
    for (Index t = k; t < z.size(); ++t)
        ck += (z(t) - m) * (z(t - k) - m);
    return ck / c0;
}

}  // namespace

TEST_CASE("white noise has negligible lag-1 correlation")
{
    Engine e = make_engine(7, 0, 0);
    const Index n = 20000;
    const Vector<double> z = simulate_series(ArmaSpec<double>::white_noise(), n, e);
    CHECK(std::abs(lag_acf(z, 1)) < 3.0 / std::sqrt(double(n)));
    CHECK(z.mean() == doctest::Approx(0.0).epsilon(3.0 / std::sqrt(double(n))));
}

TEST_CASE("ar(1) path has the stationary autocorrelation")
{
    Engine e = make_engine(8, 0, 0);
    const Index n = 100000;
    const double phi = 0.9;
    const Vector<double> z = simulate_series(ArmaSpec<double>::ar(Vector<double>::Constant(1, phi)), n, e);
    // Bartlett: var(r_1) ~ (1 - phi^2) / n
    const double se = std::sqrt((1 - phi * phi) / double(n));
    CHECK(std::abs(lag_acf(z, 1) - phi) < 3 * se);
}

TEST_CASE("first observation follows the stationary variance")
{
    // var(z_1) must be gamma_0 without burn-in
    const auto spec = ArmaSpec<double>::arma11(0.95, -0.5);
    const double g0 = arma_acvf(spec, 0)[0];
    double s = 0;
    const int reps = 4000;
    for (int i = 0; i < reps; ++i) {
        Engine e = make_engine(9, 0, static_cast<std::uint64_t>(i));
        const double x = simulate_series(spec, 2, e)(0);
        s += x * x;
    }
    const double v = s / reps;
    CHECK(std::abs(v / g0 - 1) < 4 * std::sqrt(2.0 / reps));
}

TEST_CASE("simulation does not depend on the worker count")
{
    SimConfig c;
    c.spec = ArmaSpec<double>::arma11(0.5, 0.3);
    c.spec.mu = 2.0;
    c.n = 50;
    c.replications = 12;
    c.seed = 42;
    c.parallel = 1;
    const auto one = simulate_arma(c, 3);
    c.parallel = 4;
    const auto four = simulate_arma(c, 3);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i)
        CHECK(one[i].values() == four[i].values());
    CHECK(one[0].values() != one[1].values());
}

TEST_CASE("simulation config validation")
{
    SimConfig c;
    c.n = 0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c.n = 10;
    c.spec = ArmaSpec<double>::ar(Vector<double>::Constant(1, 1.2));
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("csv quoting")
{
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");

    Table t;
    t.columns = {"name", "value"};
    t.add({std::string("x,y"), 1.5});
    t.add({std::string("z"), 3LL});
    std::ostringstream os;
    write_csv(os, t);
    CHECK(os.str() == "name,value\n\"x,y\",1.5\nz,3\n");
}

TEST_CASE("json output")
{
    Table t;
    t.columns = {"name", "value", "ok"};
    t.add({std::string("a"), 0.25, true});
    const auto j = to_json(t);
    REQUIRE(j.is_array());
    CHECK(j[0]["name"] == "a");
    CHECK(j[0]["value"] == 0.25);
    CHECK(j[0]["ok"] == true);
}

TEST_CASE("number formatting round-trips")
{
    for (double v : {0.1, 1.0 / 3.0, 1e-12, 12345.678})
        CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("mse ratio and bootstrap interval")
{
    PairedErrors e;
    Engine g = make_engine(1, 0, 0);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 500; ++i)
        e.add(2.0 * nd(g), nd(g));
    const double r = mse_ratio(e);
    CHECK(r == doctest::Approx(0.25).epsilon(0.2));
    const Interval ci = bootstrap_ratio_ci(e, 1, 0);
    CHECK(ci.lo < r);
    CHECK(r < ci.hi);
    const Interval again = bootstrap_ratio_ci(e, 1, 0);
    CHECK(again.lo == ci.lo);
    CHECK(again.hi == ci.hi);

    PairedErrors same;
    for (int i = 0; i < 100; ++i)
        same.add(0.1 * i - 5, 0.1 * i - 5);
    CHECK(mse_ratio(same) == doctest::Approx(1.0));
}

TEST_CASE("kl table shape")
{
    const Table t = table1();
    CHECK(t.rows.size() == 10);
    CHECK_FALSE(t.columns.empty());
}

TEST_CASE("likelihood cost does not grow with n")
{
    const ScalingReport s = scaling_check({1000, 10000}, 200);
    CHECK(s.flops_constant);
    REQUIRE(s.rows.size() == 2);
    CHECK(s.rows[0].flops_per_eval == s.rows[1].flops_per_eval);
    CHECK(s.rows[0].flops_per_eval > 0);
}
