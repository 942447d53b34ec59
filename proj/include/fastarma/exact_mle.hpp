#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "fastarma/acvf.hpp"
#include "fastarma/arma_approx.hpp"
#include "fastarma/optimize.hpp"
#include "fastarma/param_transform.hpp"
#include "fastarma/types.hpp"

namespace fastarma {

/// Exact Gaussian log-likelihood pieces from the innovations of the
/// Durbin-Levinson recursion run to order n - 1: O(n^2) time, O(n) memory.
template <typename Scalar>
struct ExactProfile {
    /// -(n/2) log(S/n) - (1/2) sum log v_t, the exact analogue of L_c.
    Scalar loglik = 0;
    Scalar mu = 0;
    Scalar sigma2 = 0;
};

/// Exact concentrated log-likelihood of an ARMA with unit-variance
/// autocovariances gamma. With `mu` empty the mean is profiled out by GLS.
template <typename Scalar>
ExactProfile<Scalar> exact_profile_loglik(const TimeSeries<Scalar>& z, const AcvfSequence<Scalar>& acvf,
                                          std::optional<Scalar> mu = std::nullopt)
{
    const Index n = z.size();
    const Vector<Scalar>& x = z.values();
    Vector<Scalar> phi = Vector<Scalar>::Zero(n), prev(n);
    Scalar v = acvf[0];
    if (!(v > Scalar(0)))
        throw NumericalError("autocovariance at lag 0 is not positive");

    // innovations of the data and of the constant regressor
    Scalar sxx = 0, sx1 = 0, s11 = 0, log_v = 0;
    for (Index t = 0; t < n; ++t) {
        Scalar ex = x(t), e1 = 1;
        for (Index j = 1; j <= t; ++j) {
            ex -= phi(j - 1) * x(t - j);
            e1 -= phi(j - 1);
        }
        sxx += ex * ex / v;
        sx1 += ex * e1 / v;
        s11 += e1 * e1 / v;
        log_v += std::log(v);

        if (t + 1 == n)
            break;
        const Index k = t + 1;
        Scalar num = acvf[k];
        for (Index j = 1; j < k; ++j)
            num -= phi(j - 1) * acvf[k - j];
        const Scalar zk = num / v;
        if (!(std::abs(zk) < Scalar(1)))
            throw NumericalError("autocovariance matrix is not positive definite");
        prev.head(k - 1) = phi.head(k - 1);
        for (Index j = 1; j < k; ++j)
            phi(j - 1) = prev(j - 1) - zk * prev(k - 1 - j);
        phi(k - 1) = zk;
        v *= Scalar(1) - zk * zk;
    }

    ExactProfile<Scalar> out;
    out.mu = mu ? *mu : sx1 / s11;
    const Scalar S = sxx - 2 * out.mu * sx1 + out.mu * out.mu * s11;
    if (!(S > Scalar(0)))
        throw DegenerateDataError("exact sum of squares is not positive");
    out.sigma2 = S / Scalar(n);
    out.loglik = -Scalar(n) / 2 * std::log(out.sigma2) - log_v / 2;
    return out;
}

/// Exact Gaussian MLE of an ARMA(p,q), the reference comparator for the
/// efficiency studies. Searches the same (zeta_AR, zeta_MA) box as fit_arma.
template <typename Scalar>
FitResult<Scalar> fit_arma_exact(const TimeSeries<Scalar>& z, Index p, Index q,
                                 MeanMode mean_mode = MeanMode::MeanMLE, const Vector<Scalar>& x_start = {},
                                 const SimplexOptions& opts = {})
{
    const ArmaBox box{p, q};
    const Index n = z.size();
    if (n < 2)
        throw DomainError("exact MLE needs at least two observations");
    std::optional<Scalar> fixed_mu;
    if (mean_mode == MeanMode::SampleMean)
        fixed_mu = z.mean();

    auto profile = [&](const Vector<Scalar>& x) {
        ArmaSpec<Scalar> spec;
        spec.phi = box.phi(x);
        spec.theta = box.theta(x);
        return exact_profile_loglik(z, arma_acvf(spec, n - 1), fixed_mu);
    };
    auto objective = [&](const Vector<Scalar>& x) -> Scalar {
        try {
            return -profile(x).loglik;
        } catch (const Error&) {
            return std::numeric_limits<Scalar>::infinity();
        }
    };
    const Scalar h = Scalar(kBoxHalfWidth);
    const Vector<Scalar> x0 = x_start.size() == box.dim() ? clip_to_box(x_start) : Vector<Scalar>::Zero(box.dim());
    const auto res = minimize_simplex<Scalar>(objective, x0, Vector<Scalar>::Constant(box.dim(), -h),
                                              Vector<Scalar>::Constant(box.dim(), h), opts);
    const ExactProfile<Scalar> best = profile(res.x);

    FitResult<Scalar> out;
    out.phi = box.phi(res.x);
    out.theta = box.theta(res.x);
    out.mu = best.mu;
    out.sigma2 = best.sigma2;
    out.loglik = best.loglik;
    out.converged = res.converged;
    out.iterations = 1;
    out.evaluations = res.evaluations + 1;
    out.loglik_history = {best.loglik};
    return out;
}

}  // namespace fastarma
