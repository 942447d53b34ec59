#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "fastarma/types.hpp"

namespace fastarma {

struct SimplexOptions {
    /// Stop when max f - min f over the simplex falls below this.
    double f_tolerance = 1e-8;
    /// ... and the simplex is no wider than this in every coordinate.
    double x_tolerance = 1e-7;
    /// Evaluation budget; 0 selects 500 * (dim + 1).
    long long max_evaluations = 0;
    double initial_step = 0.1;
    /// Fresh simplices built around the incumbent after convergence.
    int restarts = 2;
};

template <typename Scalar>
struct SimplexResult {
    Vector<Scalar> x;
    Scalar value = 0;
    long long evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead minimization over the box [lower, upper]. Trial points are
/// projected onto the box, which keeps every evaluation admissible.
template <typename Scalar>
SimplexResult<Scalar> minimize_simplex(const std::function<Scalar(const Vector<Scalar>&)>& f,
                                       Vector<Scalar> x0, const Vector<Scalar>& lower,
                                       const Vector<Scalar>& upper, const SimplexOptions& opts = {})
{
    const Index dim = x0.size();
    const long long budget = opts.max_evaluations > 0 ? opts.max_evaluations : 500LL * (dim + 1);
    SimplexResult<Scalar> out;

    auto project = [&](Vector<Scalar> x) {
        return Vector<Scalar>(x.cwiseMax(lower).cwiseMin(upper));
    };
    auto eval = [&](const Vector<Scalar>& x) {
        ++out.evaluations;
        const Scalar v = f(x);
        return std::isfinite(static_cast<double>(v)) ? v : std::numeric_limits<Scalar>::infinity();
    };

    x0 = project(std::move(x0));
    if (dim == 0) {
        out.x = x0;
        out.value = eval(x0);
        out.converged = true;
        return out;
    }

    std::vector<Vector<Scalar>> pts(dim + 1);
    std::vector<Scalar> vals(dim + 1);
    std::vector<std::size_t> order(dim + 1);

    auto build_simplex = [&](const Vector<Scalar>& centre, Scalar centre_value, Scalar step) {
        pts[0] = centre;
        vals[0] = centre_value;
        for (Index i = 0; i < dim; ++i) {
            Vector<Scalar> x = centre;
            // step inward when the centre sits on the upper face
            x(i) += (x(i) + step <= upper(i)) ? step : -step;
            pts[i + 1] = project(x);
            vals[i + 1] = eval(pts[i + 1]);
        }
    };

    auto sort_simplex = [&]() {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<Vector<Scalar>> p2(dim + 1);
        std::vector<Scalar> v2(dim + 1);
        for (std::size_t k = 0; k <= static_cast<std::size_t>(dim); ++k) {
            p2[k] = pts[order[k]];
            v2[k] = vals[order[k]];
        }
        pts.swap(p2);
        vals.swap(v2);
    };

    auto converged = [&]() {
        if (!(std::abs(vals[dim] - vals[0]) <= Scalar(opts.f_tolerance)))
            return false;
        for (Index i = 1; i <= dim; ++i)
            if ((pts[i] - pts[0]).cwiseAbs().maxCoeff() > Scalar(opts.x_tolerance))
                return false;
        return true;
    };

    auto run = [&]() {
        const Scalar alpha = 1, gamma = 2, rho = 0.5, shrink = 0.5;
        while (out.evaluations < budget) {
            sort_simplex();
            if (converged())
                return true;
            Vector<Scalar> centroid = Vector<Scalar>::Zero(dim);
            for (Index i = 0; i < dim; ++i)
                centroid += pts[i];
            centroid /= Scalar(dim);

            const Vector<Scalar> xr = project(centroid + alpha * (centroid - pts[dim]));
            const Scalar fr = eval(xr);
            if (fr < vals[0]) {
                const Vector<Scalar> xe = project(centroid + gamma * (xr - centroid));
                const Scalar fe = eval(xe);
                if (fe < fr) {
                    pts[dim] = xe;
                    vals[dim] = fe;
                } else {
                    pts[dim] = xr;
                    vals[dim] = fr;
                }
                continue;
            }
            if (fr < vals[dim - 1]) {
                pts[dim] = xr;
                vals[dim] = fr;
                continue;
            }
            const bool outside = fr < vals[dim];
            const Vector<Scalar> xc = outside ? project(centroid + rho * (xr - centroid))
                                              : project(centroid + rho * (pts[dim] - centroid));
            const Scalar fc = eval(xc);
            if (fc < (outside ? fr : vals[dim])) {
                pts[dim] = xc;
                vals[dim] = fc;
                continue;
            }
            for (Index i = 1; i <= dim; ++i) {
                pts[i] = project(pts[0] + shrink * (pts[i] - pts[0]));
                vals[i] = eval(pts[i]);
            }
        }
        sort_simplex();
        return converged();
    };

    build_simplex(x0, eval(x0), Scalar(opts.initial_step));
    bool ok = run();
    for (int k = 0; k < opts.restarts && ok && out.evaluations < budget; ++k) {
        const Scalar before = vals[0];
        build_simplex(pts[0], vals[0], Scalar(opts.initial_step) * Scalar(0.5));
        ok = run();
        if (std::abs(before - vals[0]) <= Scalar(opts.f_tolerance))
            break;
    }
    out.x = pts[0];
    out.value = vals[0];
    out.converged = ok;
    return out;
}

}  // namespace fastarma
