#pragma once

#include "fastarma/ar_likelihood.hpp"
#include "fastarma/estimators.hpp"
#include "fastarma/mean_mle.hpp"
#include "fastarma/types.hpp"

namespace fastarma {

/// Exact Gaussian MLE of an AR(p) started from given partial
/// autocorrelations.
template <typename Scalar>
FitResult<Scalar> fit_ar_from(const TimeSeries<Scalar>& z, Index p, MeanMode mean_mode,
                              const Vector<Scalar>& zeta0, const SimplexOptions& opts = {})
{
    if (p < 0)
        throw DomainError("AR order must be non-negative");
    if (zeta0.size() != p)
        throw DomainError("starting point has the wrong length");
    if (z.size() < 2 * p)
        throw OrderTooLargeError("AR(" + std::to_string(p) + ") needs at least " + std::to_string(2 * p)
                                 + " observations");
    if (mean_mode == MeanMode::MeanMLE)
        return detail::mean_mle_from(z, p, zeta0, opts);

    const Scalar zbar = z.mean();
    const LikelihoodEvaluator<Scalar> ev(z, p, zbar);
    const ArMaximum<Scalar> m = maximize_ar(ev, zeta0, opts);

    FitResult<Scalar> out;
    out.phi = pacf_to_ar(PacfVector<Scalar>(m.zeta));
    out.theta = Vector<Scalar>(0);
    out.mu = zbar;
    out.sigma2 = m.value.sigma2;
    out.loglik = m.value.loglik;
    out.converged = m.converged;
    out.iterations = 1;
    out.evaluations = m.evaluations;
    out.flops_per_eval = ev.flops_per_eval();
    out.loglik_history = {m.value.loglik};
    return out;
}

/// Exact Gaussian MLE of an AR(p). SampleMean fixes mu at the sample mean
/// and needs a single O(n p) pass; MeanMLE alternates with the exact mean.
template <typename Scalar>
FitResult<Scalar> fit_ar(const TimeSeries<Scalar>& z, Index p, MeanMode mean_mode = MeanMode::SampleMean,
                         ArInit init = ArInit::Burg, const SimplexOptions& opts = {})
{
    if (p < 0)
        throw DomainError("AR order must be non-negative");
    if (z.size() < 2 * p)
        throw OrderTooLargeError("AR(" + std::to_string(p) + ") needs at least " + std::to_string(2 * p)
                                 + " observations");
    Vector<Scalar> zeta0 = Vector<Scalar>::Zero(p);
    if (init == ArInit::Burg && p > 0)
        zeta0 = burg(z, p).zeta;
    return fit_ar_from(z, p, mean_mode, Vector<Scalar>(clip_to_box(zeta0)), opts);
}

}  // namespace fastarma
