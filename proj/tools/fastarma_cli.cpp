#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fastarma/fastarma.hpp"
#include "fastarma/bench/experiments.hpp"
#include "fastarma/bench/report.hpp"
#include "fastarma/bench/simulate.hpp"

namespace {

using fastarma::Index;
using fastarma::Vector;
using nlohmann::json;
namespace bench = fastarma::bench;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> read_series(std::istream& in, const std::string& name)
{
    std::vector<double> values;
    std::string line;
    long long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        double v = 0;
        const char* first = t.data();
        const char* last = t.data() + t.size();
        if (*first == '+')
            ++first;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
            throw ValidationError(name + ":" + std::to_string(lineno) + ": not a finite number: '" + t + "'");
        values.push_back(v);
    }
    if (values.empty())
        throw ValidationError(name + ": no observations");
    return values;
}

Vector<double> to_vector(const std::vector<double>& v)
{
    Vector<double> out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out(static_cast<Index>(i)) = v[i];
    return out;
}

std::vector<double> to_std(const Vector<double>& v) { return {v.data(), v.data() + v.size()}; }

void emit(const bench::Table& table, bool as_json, const json& extra = nullptr)
{
    if (as_json) {
        json doc;
        doc["rows"] = bench::to_json(table);
        if (!extra.is_null())
            doc["summary"] = extra;
        std::cout << doc.dump(2) << '\n';
    } else {
        bench::write_csv(std::cout, table);
    }
}

fastarma::MeanMode parse_mean(const std::string& s)
{
    return s == "mle" ? fastarma::MeanMode::MeanMLE : fastarma::MeanMode::SampleMean;
}

fastarma::ArmaInit parse_init(const std::string& s)
{
    if (s == "hr")
        return fastarma::ArmaInit::HRInit;
    if (s == "explicit")
        return fastarma::ArmaInit::Explicit;
    return fastarma::ArmaInit::Origin;
}

struct Common {
    bool json = false;
    std::uint64_t seed = 20070101;
    int reps = 1;
    unsigned workers = 0;
    Index r = 30;
};

int run_fit(const std::string& path, Index p, Index q, const Common& c, const std::string& mean,
            const std::string& init, const std::vector<double>& start_phi, const std::vector<double>& start_theta,
            bool csv, bool strict, long long max_evaluations)
{
    std::vector<double> values;
    if (path == "-") {
        values = read_series(std::cin, "stdin");
    } else {
        std::ifstream in(path);
        if (!in)
            throw ValidationError("cannot open " + path);
        values = read_series(in, path);
    }
    const fastarma::TimeSeries<double> z(values);

    fastarma::ArmaFitOptions<double> opts;
    opts.r = c.r;
    opts.mean_mode = parse_mean(mean);
    opts.init = parse_init(init);
    opts.kl_diagnostic = q > 0;
    opts.simplex.max_evaluations = max_evaluations;
    if (opts.init == fastarma::ArmaInit::Explicit) {
        if (static_cast<Index>(start_phi.size()) != p || static_cast<Index>(start_theta.size()) != q)
            throw ValidationError("--init explicit needs --start-phi with p values and --start-theta with q values");
        opts.start = fastarma::ArmaSpec<double>{to_vector(start_phi), to_vector(start_theta), 0.0, 1.0};
    }
    const fastarma::FitResult<double> f = fastarma::fit_arma(z, p, q, opts);

    json doc;
    doc["n"] = z.size();
    doc["p"] = p;
    doc["q"] = q;
    doc["r"] = q > 0 ? f.r : p;
    doc["mean"] = fastarma::to_string(opts.mean_mode);
    doc["init"] = fastarma::to_string(opts.init);
    doc["phi"] = to_std(f.phi);
    doc["theta"] = to_std(f.theta);
    doc["mu"] = f.mu;
    doc["sigma2"] = f.sigma2;
    doc["loglik"] = f.loglik;
    doc["converged"] = f.converged;
    doc["max_iterations_reached"] = f.max_iterations_reached;
    doc["iterations"] = f.iterations;
    doc["evaluations"] = f.evaluations;
    doc["flops_per_eval"] = f.flops_per_eval;
    doc["loglik_history"] = f.loglik_history;
    if (f.kl_diagnostic)
        doc["kl_diagnostic"] = *f.kl_diagnostic;
    doc["approximation_degraded"] = f.approximation_degraded;

    if (csv) {
        bench::Table t{{"parameter", "value"}, {}};
        for (Index i = 0; i < f.phi.size(); ++i)
            t.add({"phi" + std::to_string(i + 1), f.phi(i)});
        for (Index i = 0; i < f.theta.size(); ++i)
            t.add({"theta" + std::to_string(i + 1), f.theta(i)});
        t.add({std::string("mu"), f.mu});
        t.add({std::string("sigma2"), f.sigma2});
        t.add({std::string("loglik"), f.loglik});
        if (f.kl_diagnostic)
            t.add({std::string("kl_diagnostic"), *f.kl_diagnostic});
        t.add({std::string("converged"), f.converged});
        t.add({std::string("approximation_degraded"), f.approximation_degraded});
        bench::write_csv(std::cout, t);
    } else {
        std::cout << doc.dump(2) << '\n';
    }
    if (f.approximation_degraded)
        std::cerr << "warning: AR(" << f.r << ") approximation is degraded at the estimates"
                  << " (KL above " << fastarma::kKlDegradedThreshold << "); consider a larger --r-order\n";
    if (strict && !f.converged) {
        std::cerr << "error: fit did not converge\n";
        return kExitNumerical;
    }
    return 0;
}

int run_simulate(const std::vector<double>& phi, const std::vector<double>& theta, double mu, double sigma2,
                 Index n, const Common& c, bool series)
{
    bench::SimConfig cfg;
    cfg.spec = fastarma::ArmaSpec<double>{to_vector(phi), to_vector(theta), mu, sigma2};
    cfg.n = n;
    cfg.replications = c.reps;
    cfg.seed = c.seed;
    cfg.parallel = c.workers;
    const auto paths = bench::simulate_arma(cfg);
    if (series) {
        if (paths.size() != 1)
            throw ValidationError("--series writes a single path; use --reps 1");
        for (Index t = 0; t < paths[0].size(); ++t)
            std::cout << bench::format_number(paths[0][t]) << '\n';
        return 0;
    }
    bench::Table t{{"replication", "t", "z"}, {}};
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (Index k = 0; k < paths[i].size(); ++k)
            t.add({static_cast<long long>(i), static_cast<long long>(k + 1), paths[i][k]});
    emit(t, c.json);
    return 0;
}

int run_kl(const std::vector<double>& phi, const std::vector<double>& theta, std::optional<double> d, Index n,
           const std::vector<Index>& orders, const Common& c)
{
    if (d) {
        emit(bench::figure3({*d}, n, orders), c.json);
        return 0;
    }
    const fastarma::ArmaSpec<double> spec{to_vector(phi), to_vector(theta), 0.0, 1.0};
    emit(bench::kl_table(spec, n, orders), c.json);
    return 0;
}

std::vector<bench::Table3Cell> parse_cells(const std::vector<std::string>& specs)
{
    std::vector<bench::Table3Cell> cells;
    for (const std::string& s : specs) {
        std::istringstream is(s);
        bench::Table3Cell cell;
        char c1 = 0, c2 = 0;
        if (!(is >> cell.phi >> c1 >> cell.theta >> c2 >> cell.n) || c1 != ':' || c2 != ':' || !is.eof())
            throw ValidationError("cell must look like phi:theta:n, got '" + s + "'");
        cells.push_back(cell);
    }
    return cells;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fast exact ARMA maximum likelihood via AR(r) approximation"};
    app.require_subcommand(1);

    Common c;
    int sim_reps = 1, study_reps = 1000;
    auto add_common = [&](CLI::App* sub, int* reps) {
        sub->add_flag("--json", c.json, "Emit a JSON document instead of CSV");
        sub->add_option("--r-order", c.r, "AR approximation order r")->check(CLI::PositiveNumber);
        if (reps) {
            sub->add_option("--seed", c.seed, "RNG seed");
            sub->add_option("--reps", *reps, "Replications")->check(CLI::PositiveNumber);
            sub->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
        }
    };

    // fit
    auto* fit = app.add_subcommand("fit", "Fit an ARMA(p,q) to a series file (one value per line)");
    std::string path;
    Index p = 1, q = 0;
    std::string mean = "sample", init = "origin";
    std::vector<double> start_phi, start_theta;
    bool csv = false, strict = false;
    long long max_evaluations = 0;
    fit->add_option("file", path, "Series file, '-' for stdin")->required();
    fit->add_option("-p,--p", p, "AR order")->check(CLI::NonNegativeNumber);
    fit->add_option("-q,--q", q, "MA order")->check(CLI::NonNegativeNumber);
    fit->add_option("--mean", mean, "Mean handling")->check(CLI::IsMember({"sample", "mle"}));
    fit->add_option("--init", init, "Starting point")->check(CLI::IsMember({"origin", "hr", "explicit"}));
    fit->add_option("--start-phi", start_phi, "Explicit AR start")->delimiter(',');
    fit->add_option("--start-theta", start_theta, "Explicit MA start")->delimiter(',');
    fit->add_flag("--csv", csv, "Write parameter,value CSV instead of JSON");
    fit->add_flag("--strict", strict, "Exit 3 when the optimizer does not converge");
    fit->add_option("--max-evaluations", max_evaluations, "Optimizer budget per run (0 = 500 (dim + 1))")
        ->check(CLI::NonNegativeNumber);
    add_common(fit, nullptr);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Simulate stationary Gaussian ARMA series");
    std::vector<double> phi, theta;
    double mu = 0, sigma2 = 1;
    Index n = 200;
    bool series = false;
    sim->add_option("--phi", phi, "AR coefficients")->delimiter(',');
    sim->add_option("--theta", theta, "MA coefficients (Box-Jenkins sign)")->delimiter(',');
    sim->add_option("--mu", mu, "Mean");
    sim->add_option("--sigma2", sigma2, "Innovation variance");
    sim->add_option("-n,--n", n, "Series length")->check(CLI::PositiveNumber);
    sim->add_flag("--series", series, "Write one value per line (fit input format)");
    add_common(sim, &sim_reps);

    // kl
    auto* kl = app.add_subcommand("kl", "KL discrepancy of AR(r) approximations");
    std::optional<double> d;
    Index kl_n = 200;
    std::vector<Index> orders = {10, 20, 30, 40, 50};
    kl->add_option("--phi", phi, "AR coefficients")->delimiter(',');
    kl->add_option("--theta", theta, "MA coefficients")->delimiter(',');
    kl->add_option("--d", d, "Fractional differencing parameter (replaces --phi/--theta)");
    kl->add_option("-n,--n", kl_n, "Series length")->check(CLI::PositiveNumber);
    kl->add_option("--r", orders, "Approximation orders")->delimiter(',');
    add_common(kl, nullptr);

    auto* t1 = app.add_subcommand("table1", "KL discrepancy table for MA(1) theta=0.95, n=200");
    add_common(t1, nullptr);

    // table3
    auto* t3 = app.add_subcommand("table3", "Sample-mean efficiency vs BLUE, MeanMLE and exact MLE");
    std::vector<std::string> cell_specs;
    bool no_mle = false, no_exact = false;
    t3->add_option("--cell", cell_specs, "Grid cell phi:theta:n (repeatable; default: full grid)");
    t3->add_flag("--no-mean-mle", no_mle, "Skip the MeanMLE column");
    t3->add_flag("--no-exact", no_exact, "Skip the exact-MLE column");
    add_common(t3, &study_reps);

    // scaling
    auto* sc = app.add_subcommand("scaling", "Per-evaluation cost against n");
    std::vector<Index> ns = {1000, 10000, 100000, 1000000};
    int evals = 10000;
    sc->add_option("--n", ns, "Series lengths")->delimiter(',');
    sc->add_option("--evals", evals, "Timed evaluations per length")->check(CLI::PositiveNumber);
    sc->add_option("--seed", c.seed, "RNG seed");
    add_common(sc, nullptr);

    // figure
    auto* fig = app.add_subcommand("figure", "Plot data for fig1, fig2 or fig3");
    std::string which;
    std::vector<double> fig_thetas, ds;
    std::vector<Index> fig_ns;
    fig->add_option("which", which, "fig1 | fig2 | fig3")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    fig->add_option("--theta", fig_thetas, "fig2 theta grid")->delimiter(',');
    fig->add_option("--n", fig_ns, "fig2 series lengths")->delimiter(',');
    fig->add_option("--d", ds, "fig3 memory parameters")->delimiter(',');
    add_common(fig, &study_reps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*fit)
            return run_fit(path, p, q, c, mean, init, start_phi, start_theta, csv, strict, max_evaluations);
        if (*sim) {
            c.reps = sim_reps;
            return run_simulate(phi, theta, mu, sigma2, n, c, series);
        }
        if (*kl)
            return run_kl(phi, theta, d, kl_n, orders, c);
        if (*t1) {
            emit(bench::table1(), c.json);
            return 0;
        }
        if (*t3) {
            bench::Table3Options o;
            o.replications = study_reps;
            o.seed = c.seed;
            o.workers = c.workers;
            o.r = c.r;
            o.mean_mle = !no_mle;
            o.exact = !no_exact;
            const auto cells = cell_specs.empty() ? bench::table3_grid() : parse_cells(cell_specs);
            emit(bench::efficiency_table(bench::table3(cells, o)), c.json);
            return 0;
        }
        if (*sc) {
            const bench::ScalingReport rep = bench::scaling_check(ns, evals, c.r, c.seed);
            json summary{{"flops_constant", rep.flops_constant},
                         {"wall_ratio", rep.wall_ratio},
                         {"setup_ratio", rep.setup_ratio}};
            emit(rep.table(), c.json, summary);
            if (!c.json)
                std::cerr << "flops_constant=" << (rep.flops_constant ? "true" : "false")
                          << " wall_ratio=" << rep.wall_ratio << " setup_ratio=" << rep.setup_ratio << '\n';
            return 0;
        }
        if (*fig) {
            if (which == "fig1") {
                emit(bench::figure1(), c.json);
            } else if (which == "fig2") {
                bench::Figure2Options o;
                if (!fig_thetas.empty())
                    o.thetas = fig_thetas;
                if (!fig_ns.empty())
                    o.ns = fig_ns;
                o.replications = study_reps;
                o.seed = c.seed;
                o.workers = c.workers;
                o.r = c.r;
                emit(bench::efficiency_table(bench::figure2(o)), c.json);
            } else {
                emit(bench::figure3(ds.empty() ? std::vector<double>{0.1, 0.2, 0.3, 0.4} : ds), c.json);
            }
            return 0;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const fastarma::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const fastarma::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
