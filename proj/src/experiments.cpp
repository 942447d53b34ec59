#include "fastarma/bench/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>

#include "fastarma/acvf.hpp"
#include "fastarma/arma_approx.hpp"
#include "fastarma/champernowne.hpp"
#include "fastarma/estimators.hpp"
#include "fastarma/exact_mle.hpp"
#include "fastarma/mean_mle.hpp"
#include "fastarma/bench/parallel.hpp"
#include "fastarma/bench/rng.hpp"
#include "fastarma/bench/simulate.hpp"

namespace fastarma::bench {

namespace {

using Clock = std::chrono::steady_clock;

ArmaSpec<double> ma1(double theta) { return ArmaSpec<double>::ma(Vector<double>::Constant(1, theta)); }

std::uint64_t bits(double v)
{
    std::uint64_t u;
    std::memcpy(&u, &v, sizeof u);
    return u;
}

// Stream id of a grid cell, so a cell draws the same series whatever
// subset of the grid is run.
std::uint64_t cell_id(std::uint64_t tag, double phi, double theta, Index n)
{
    return splitmix64(splitmix64(splitmix64(tag) ^ bits(phi)) ^ bits(theta)) ^ static_cast<std::uint64_t>(n);
}

Index approx_order(Index r, Index n) { return std::min(r, n / 2); }

void add_kl_rows(Table& t, const ArmaSpec<double>& spec, Index n, Index r)
{
    t.add({static_cast<long long>(r), std::string("mmse"), kl_discrepancy(spec, mmse_ar(spec, r), n),
           std::string("ok")});
    try {
        t.add({static_cast<long long>(r), std::string("truncated"),
               kl_discrepancy(spec, truncated_pi_ar(spec, r), n), std::string("ok")});
    } catch (const ApproximationInvalidError&) {
        t.add({static_cast<long long>(r), std::string("truncated"), std::nan(""),
               std::string("approximation-invalid")});
    }
}

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v)
{
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

EfficiencyReport make_report(double phi, double theta, Index n, std::string estimator, std::string reference,
                             const PairedErrors& e, long long failures, std::uint64_t seed, std::uint64_t cell,
                             std::string flag)
{
    EfficiencyReport rep;
    rep.phi = phi;
    rep.theta = theta;
    rep.n = n;
    rep.estimator = std::move(estimator);
    rep.reference = std::move(reference);
    rep.replications = static_cast<long long>(e.size());
    rep.failures = failures;
    rep.flag = std::move(flag);
    if (e.size() > 0) {
        rep.efficiency = mse_ratio(e);
        rep.ci = bootstrap_ratio_ci(e, seed, cell);
    } else {
        rep.efficiency = rep.ci.lo = rep.ci.hi = std::nan("");
    }
    return rep;
}

}  // namespace

Table kl_table(const ArmaSpec<double>& spec, Index n, const std::vector<Index>& orders)
{
    Table t{{"r", "method", "kl", "status"}, {}};
    for (Index r : orders)
        add_kl_rows(t, spec, n, r);
    return t;
}

Table table1() { return kl_table(ma1(0.95), 200, {10, 20, 30, 40, 50}); }

std::vector<Table3Cell> table3_grid()
{
    const double values[] = {-0.95, -0.9, -0.5, 0.0, 0.5, 0.9, 0.95};
    std::vector<Table3Cell> cells;
    for (double phi : values)
        for (Index n : {50, 100, 200})
            for (double theta : values)
                cells.push_back({phi, theta, n});
    return cells;
}

std::vector<EfficiencyReport> table3(const std::vector<Table3Cell>& cells, const Table3Options& opts)
{
    if (opts.replications < 1)
        throw DomainError("replications must be at least 1");
    std::vector<EfficiencyReport> out;
    for (const Table3Cell& c : cells) {
        const ArmaSpec<double> spec = ArmaSpec<double>::arma11(c.phi, c.theta);
        if (!is_causal(spec.phi) || !is_invertible(spec.theta))
            throw DomainError("Table 3 cells must be causal and invertible");
        if (c.n < 4)
            throw DomainError("series length too short");
        std::string flag;
        if (std::abs(c.theta) >= 0.95)
            flag = "near-boundary";
        else if (c.phi == c.theta && c.phi != 0.0)
            flag = "redundant";

        const std::uint64_t id = cell_id(3, c.phi, c.theta, c.n);
        const double blue = blue_efficiency(arma_acvf(spec, c.n - 1), c.n);
        EfficiencyReport b;
        b.phi = c.phi;
        b.theta = c.theta;
        b.n = c.n;
        b.estimator = "sample_mean";
        b.reference = "BLUE";
        b.efficiency = blue;
        b.ci = {blue, blue};
        b.flag = flag;
        out.push_back(b);
        if (!opts.mean_mle && !opts.exact)
            continue;

        struct Rep {
            double zbar = 0;
            double mle = std::nan("");
            double exact = std::nan("");
        };
        std::vector<Rep> reps(static_cast<std::size_t>(opts.replications));
        ArmaFitOptions<double> fo;
        fo.r = approx_order(opts.r, c.n);
        fo.mean_mode = MeanMode::MeanMLE;
        fo.init = ArmaInit::Origin;
        parallel_for(reps.size(), opts.workers, [&](std::size_t i) {
            Engine engine = make_engine(opts.seed, id, i);
            const TimeSeries<double> z(simulate_series(spec, c.n, engine));
            Rep& rep = reps[i];
            rep.zbar = z.mean();
            Vector<double> start = Vector<double>::Zero(2);
            if (opts.mean_mle) {
                try {
                    const FitResult<double> f = fit_arma(z, 1, 1, fo);
                    rep.mle = f.mu;
                    start = ArmaBox{1, 1}.pack(ar_to_pacf(f.phi).values(), ar_to_pacf(f.theta).values());
                } catch (const Error&) {
                }
            }
            if (opts.exact) {
                try {
                    rep.exact = fit_arma_exact(z, 1, 1, MeanMode::MeanMLE, start).mu;
                } catch (const Error&) {
                }
            }
        });

        auto collect = [&](double Rep::*field, const char* name, std::uint64_t salt) {
            PairedErrors e;
            long long failures = 0;
            for (const Rep& r : reps) {
                if (std::isfinite(r.*field))
                    e.add(r.zbar, r.*field);
                else
                    ++failures;
            }
            out.push_back(make_report(c.phi, c.theta, c.n, "sample_mean", name, e, failures, opts.seed,
                                      id ^ salt, flag));
        };
        if (opts.mean_mle)
            collect(&Rep::mle, "MeanMLE", 1);
        if (opts.exact)
            collect(&Rep::exact, "ExactMLE", 2);
    }
    return out;
}

Table efficiency_table(const std::vector<EfficiencyReport>& reports)
{
    Table t{{"phi", "theta", "n", "estimator", "reference", "efficiency", "ci_lo", "ci_hi", "replications",
             "failures", "flag"},
            {}};
    for (const auto& r : reports)
        t.add({r.phi, r.theta, r.n, r.estimator, r.reference, r.efficiency, r.ci.lo, r.ci.hi, r.replications,
               r.failures, r.flag});
    return t;
}

Table ScalingReport::table() const
{
    Table t{{"n", "flops_per_eval", "eval_seconds", "setup_seconds"}, {}};
    for (const auto& r : rows)
        t.add({static_cast<long long>(r.n), r.flops_per_eval, r.eval_seconds, r.setup_seconds});
    return t;
}

ScalingReport scaling_check(const std::vector<Index>& ns, int evals, Index r, std::uint64_t seed)
{
    if (ns.empty() || evals < 1)
        throw DomainError("scaling check needs at least one length and one evaluation");
    const ArmaSpec<double> spec = ArmaSpec<double>::arma11(0.9, 0.5);
    const int batch = std::min(evals, 100);
    const int batches = std::max(1, evals / batch);
    // a few distinct parameter points so no evaluation can be hoisted
    const Vector<double> points[] = {Vector<double>((Vector<double>(2) << 0.9, 0.5).finished()),
                                     Vector<double>((Vector<double>(2) << 0.5, -0.3).finished()),
                                     Vector<double>((Vector<double>(2) << -0.2, 0.7).finished())};

    ScalingReport rep;
    for (Index n : ns) {
        Engine engine = make_engine(seed, 6, static_cast<std::uint64_t>(n));
        const TimeSeries<double> z(simulate_series(spec, n, engine));

        std::vector<double> setups;
        ChampernowneState<double> state;
        for (int k = 0; k < 3; ++k) {
            const auto t0 = Clock::now();
            state = build_champernowne(z, r, z.mean());
            setups.push_back(seconds_since(t0));
        }
        const ArmaLikelihood<double> lik(LikelihoodEvaluator<double>(state), 1, 1);

        double sink = 0;
        std::vector<double> times;
        for (int b = 0; b < batches; ++b) {
            const auto t0 = Clock::now();
            for (int k = 0; k < batch; ++k)
                sink += lik(points[k % 3]).loglik;
            times.push_back(seconds_since(t0) / batch);
        }
        if (!std::isfinite(sink))
            throw NumericalError("scaling check produced a non-finite likelihood");
        rep.rows.push_back({n, lik.flops_per_eval(), median(times), median(setups)});
    }

    rep.flops_constant = std::all_of(rep.rows.begin(), rep.rows.end(),
                                     [&](const ScalingRow& row) { return row.flops_per_eval == rep.rows[0].flops_per_eval; });
    const ScalingRow& last = rep.rows.back();
    auto base = std::find_if(rep.rows.begin(), rep.rows.end(), [](const ScalingRow& row) { return row.n == 10000; });
    const ScalingRow& ref = base != rep.rows.end() ? *base : rep.rows.front();
    rep.wall_ratio = last.eval_seconds / ref.eval_seconds;
    if (rep.rows.size() >= 2) {
        const ScalingRow& prev = rep.rows[rep.rows.size() - 2];
        rep.setup_ratio = (last.setup_seconds / prev.setup_seconds)
                          / (static_cast<double>(last.n) / static_cast<double>(prev.n));
    }
    return rep;
}

Table figure1()
{
    const ArmaSpec<double> spec = ma1(0.9);
    Table t{{"r", "kl_mmse", "kl_truncated"}, {}};
    for (Index r = 1; r <= 50; ++r) {
        const double mmse = kl_discrepancy(spec, mmse_ar(spec, r), 200);
        double trunc = std::nan("");
        try {
            trunc = kl_discrepancy(spec, truncated_pi_ar(spec, r), 200);
        } catch (const ApproximationInvalidError&) {
        }
        t.add({static_cast<long long>(r), mmse, trunc});
    }
    return t;
}

std::vector<EfficiencyReport> figure2(const Figure2Options& opts)
{
    if (opts.replications < 1)
        throw DomainError("replications must be at least 1");
    std::vector<EfficiencyReport> out;
    for (double theta : opts.thetas) {
        for (Index n : opts.ns) {
            const ArmaSpec<double> spec = ma1(theta);
            spec.validate();
            const std::uint64_t id = cell_id(2, 0.0, theta, n);
            const std::string flag = std::abs(theta) >= 1.0 ? "boundary" : "";

            struct Rep {
                double exact = std::nan("");
                double sample = std::nan("");
                double durbin = std::nan("");
            };
            std::vector<Rep> reps(static_cast<std::size_t>(opts.replications));
            ArmaFitOptions<double> fo;
            fo.r = approx_order(opts.r, n);
            parallel_for(reps.size(), opts.workers, [&](std::size_t i) {
                Engine engine = make_engine(opts.seed, id, i);
                const TimeSeries<double> z(simulate_series(spec, n, engine));
                Rep& rep = reps[i];
                Vector<double> start = Vector<double>::Zero(1);
                try {
                    const FitResult<double> f = fit_arma(z, 0, 1, fo);
                    rep.sample = f.theta(0);
                    start(0) = f.theta(0);
                } catch (const Error&) {
                }
                try {
                    rep.durbin = durbin_ma(z, 1)(0);
                } catch (const Error&) {
                }
                try {
                    rep.exact = fit_arma_exact(z, 0, 1, MeanMode::MeanMLE, start).theta(0);
                } catch (const Error&) {
                }
            });

            auto collect = [&](double Rep::*field, const char* name, std::uint64_t salt) {
                PairedErrors e;
                long long failures = 0;
                for (const Rep& r : reps) {
                    if (std::isfinite(r.*field) && std::isfinite(r.exact))
                        e.add(r.*field - theta, r.exact - theta);
                    else
                        ++failures;
                }
                out.push_back(make_report(0.0, theta, n, name, "ExactMLE", e, failures, opts.seed, id ^ salt, flag));
            };
            collect(&Rep::sample, "SampleMean", 1);
            collect(&Rep::durbin, "Durbin", 2);
        }
    }
    return out;
}

Table figure3(const std::vector<double>& ds, Index n, const std::vector<Index>& orders)
{
    std::vector<Index> rs = orders;
    if (rs.empty())
        for (Index r = 5; r <= 100; r += 5)
            rs.push_back(r);
    Table t{{"d", "r", "kl"}, {}};
    for (double d : ds) {
        const AcvfSequence<double> truth = fdwn_acvf(d, n - 1);
        for (Index r : rs) {
            const Vector<double> varphi = levinson_durbin(truth.gamma, r).phi;
            const AcvfSequence<double> approx = arma_acvf(ArmaSpec<double>::ar(varphi), n - 1);
            t.add({d, static_cast<long long>(r), kl_discrepancy(truth, approx, n)});
        }
    }
    return t;
}

}  // namespace fastarma::bench
