#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include <Eigen/Cholesky>

#include "fastarma/acvf.hpp"
#include "fastarma/ar_fit.hpp"
#include "fastarma/ar_likelihood.hpp"
#include "fastarma/estimators.hpp"
#include "fastarma/mean_mle.hpp"
#include "fastarma/optimize.hpp"
#include "fastarma/param_transform.hpp"
#include "fastarma/types.hpp"

namespace fastarma {

/// The approximating AR(r) has a covariance matrix that is not positive
/// definite (a non-causal truncated pi-polynomial, say).
class ApproximationInvalidError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

enum class ApproxMethod { MMSE, TruncatedPi };

inline const char* to_string(ApproxMethod m) { return m == ApproxMethod::MMSE ? "mmse" : "truncated"; }

/// AR(r) stand-in varphi(B) for an ARMA model.
template <typename Scalar>
struct ArApproximation {
    Vector<Scalar> varphi;
    Index r = 0;
    ArmaSpec<Scalar> source;
    ApproxMethod method = ApproxMethod::MMSE;
    /// Always true for MMSE; may fail for a truncated pi-polynomial.
    bool causal = true;

    /// The approximating model, driven by the source's innovations.
    ArmaSpec<Scalar> as_spec() const { return ArmaSpec<Scalar>::ar(varphi, source.sigma2); }
};

/// Order-r MMSE linear predictor of a causal, invertible ARMA: Yule-Walker
/// on the exact autocovariances, solved by Durbin-Levinson.
template <typename Scalar>
ArApproximation<Scalar> mmse_ar(const ArmaSpec<Scalar>& spec, Index r)
{
    if (r < 1)
        throw DomainError("approximation order must be at least 1");
    if (!is_causal(spec.phi))
        throw DomainError("MMSE approximation requires a causal AR polynomial");
    if (!is_invertible(spec.theta))
        throw DomainError("MMSE approximation requires an invertible MA polynomial");
    const AcvfSequence<Scalar> acvf = arma_acvf(spec, r);
    ArApproximation<Scalar> out;
    out.varphi = levinson_durbin(acvf.gamma, r).phi;
    out.r = r;
    out.source = spec;
    out.method = ApproxMethod::MMSE;
    out.causal = true;
    return out;
}

/// First r pi-weights. Causality is checked and recorded, not assumed.
template <typename Scalar>
ArApproximation<Scalar> truncated_pi_ar(const ArmaSpec<Scalar>& spec, Index r)
{
    if (r < 1)
        throw DomainError("approximation order must be at least 1");
    ArApproximation<Scalar> out;
    out.varphi = pi_weights(spec, r);
    out.r = r;
    out.source = spec;
    out.method = ApproxMethod::TruncatedPi;
    out.causal = is_causal(out.varphi);
    return out;
}

/// I = (tr(S T^{-1}) - log(|S| / |T|) - n) / 2 for the n x n Toeplitz
/// matrices S and T of two autocovariance sequences.
template <typename Scalar>
Scalar kl_discrepancy(const AcvfSequence<Scalar>& truth, const AcvfSequence<Scalar>& approx, Index n)
{
    if (n < 1)
        throw DomainError("series length must be positive");
    const Eigen::LLT<Matrix<Scalar>> ls(truth.toeplitz(n));
    if (ls.info() != Eigen::Success)
        throw NumericalError("covariance of the true model is not positive definite");
    const Eigen::LLT<Matrix<Scalar>> lt(approx.toeplitz(n));
    if (lt.info() != Eigen::Success)
        throw ApproximationInvalidError("approximating covariance is not positive definite");

    const Matrix<Scalar> ms = ls.matrixL();
    const Matrix<Scalar> w = lt.matrixL().solve(ms);
    const Scalar trace = w.squaredNorm();
    const Scalar logdet_s = 2 * ms.diagonal().array().log().sum();
    const Scalar logdet_t = 2 * Matrix<Scalar>(lt.matrixL()).diagonal().array().log().sum();
    return (trace - (logdet_s - logdet_t) - Scalar(n)) / 2;
}

template <typename Scalar>
Scalar kl_discrepancy(const ArmaSpec<Scalar>& spec, const ArApproximation<Scalar>& approx, Index n)
{
    if (!approx.causal)
        throw ApproximationInvalidError("approximating AR polynomial is not causal");
    return kl_discrepancy(arma_acvf(spec, n - 1), arma_acvf(approx.as_spec(), n - 1), n);
}

/// Approximate ARMA(p,q) concentrated log-likelihood: (phi, theta) go to
/// the MMSE AR(r) predictor, which is scored on a fixed order-r
/// Champernowne state. Each call is O(r^2) and independent of n.
template <typename Scalar>
class ArmaLikelihood {
public:
    ArmaLikelihood(LikelihoodEvaluator<Scalar> ar, Index p, Index q) : ar_(std::move(ar)), box_{p, q}
    {
        if (p < 0 || q < 0)
            throw DomainError("ARMA orders must be non-negative");
        if (p > ar_.r() || q > ar_.r())
            throw DomainError("approximation order must be at least max(p, q)");
    }

    ArmaLikelihood(const TimeSeries<Scalar>& z, Index p, Index q, Index r, Scalar mu)
        : ArmaLikelihood(LikelihoodEvaluator<Scalar>(z, r, mu), p, q)
    {
    }

    const LikelihoodEvaluator<Scalar>& ar() const noexcept { return ar_; }
    const ArmaBox& box() const noexcept { return box_; }
    Index r() const noexcept { return ar_.r(); }
    Index n() const noexcept { return ar_.n(); }
    Scalar mu() const noexcept { return ar_.mu(); }
    long long flops_per_eval() const noexcept { return ar_.flops_per_eval(); }

    ArmaLikelihood with_mean(Scalar mu) const { return ArmaLikelihood(ar_.with_mean(mu), box_.p, box_.q); }

    /// MMSE predictor for box coordinates x = (zeta_AR, zeta_MA).
    LevinsonResult<Scalar> predictor(const Vector<Scalar>& x, FlopCounter* counter = nullptr) const
    {
        ArmaSpec<Scalar> spec;
        spec.phi = box_.phi(x, counter);
        spec.theta = box_.theta(x, counter);
        const AcvfSequence<Scalar> acvf = arma_acvf(spec, r(), counter);
        return levinson_durbin(acvf.gamma, r(), counter);
    }

    LikelihoodValue<Scalar> operator()(const Vector<Scalar>& x) const
    {
        if (x.size() != box_.dim())
            throw DomainError("parameter vector has the wrong length");
        FlopCounter local;
        const LevinsonResult<Scalar> lev = predictor(x, &local);
        return ar_.evaluate(lev.phi, lev.log_gp, local.flops());
    }

private:
    LikelihoodEvaluator<Scalar> ar_;
    ArmaBox box_;
};

template <typename Scalar>
LikelihoodValue<Scalar> arma_concentrated_loglik(const ArmaLikelihood<Scalar>& evaluator,
                                                 const PacfVector<Scalar>& zeta_ar,
                                                 const PacfVector<Scalar>& zeta_ma, Scalar mu)
{
    const Vector<Scalar> x = evaluator.box().pack(zeta_ar.values(), zeta_ma.values());
    if (mu == evaluator.mu())
        return evaluator(x);
    return evaluator.with_mean(mu)(x);
}

/// Largest n for which fit_arma can compute the KL diagnostic (dense n^3).
inline constexpr Index kKlDiagnosticMaxN = 2000;

/// KL discrepancy above which a fit is flagged approximate-degraded.
inline constexpr double kKlDegradedThreshold = 0.5;

template <typename Scalar>
struct ArmaFitOptions {
    Index r = 30;
    MeanMode mean_mode = MeanMode::SampleMean;
    ArmaInit init = ArmaInit::Origin;
    /// Starting parameters for ArmaInit::Explicit (mu and sigma2 ignored).
    std::optional<ArmaSpec<Scalar>> start;
    /// KL between the fitted ARMA and its AR(r) predictor at n; skipped
    /// when n exceeds kKlDiagnosticMaxN.
    bool kl_diagnostic = false;
    double kl_threshold = kKlDegradedThreshold;
    SimplexOptions simplex;
};

namespace detail {

template <typename Scalar>
Vector<Scalar> arma_start(const TimeSeries<Scalar>& z, Index p, Index q, const ArmaFitOptions<Scalar>& opts)
{
    switch (opts.init) {
    case ArmaInit::Origin:
        return Vector<Scalar>::Zero(p + q);
    case ArmaInit::HRInit: {
        const HannanRissanenFit<Scalar> hr = hannan_rissanen(z, p, q);
        return ArmaBox{p, q}.pack(project_to_box(hr.spec.phi), project_to_box(hr.spec.theta));
    }
    case ArmaInit::Explicit:
        if (!opts.start)
            throw DomainError("explicit initialization needs starting parameters");
        if (opts.start->p() != p || opts.start->q() != q)
            throw DomainError("explicit starting parameters have the wrong orders");
        return ArmaBox{p, q}.pack(project_to_box(opts.start->phi), project_to_box(opts.start->theta));
    }
    return Vector<Scalar>::Zero(p + q);
}

template <typename Scalar>
StepOne<Scalar> maximize_arma(const ArmaLikelihood<Scalar>& ev, const Vector<Scalar>& x0,
                              const SimplexOptions& opts)
{
    const Index dim = ev.box().dim();
    const Scalar h = Scalar(kBoxHalfWidth);
    auto objective = [&](const Vector<Scalar>& x) -> Scalar {
        try {
            return -ev(x).loglik;
        } catch (const DegenerateDataError&) {
            return std::numeric_limits<Scalar>::infinity();
        } catch (const NumericalError&) {
            return std::numeric_limits<Scalar>::infinity();
        }
    };
    const auto res = minimize_simplex<Scalar>(objective, clip_to_box(x0), Vector<Scalar>::Constant(dim, -h),
                                              Vector<Scalar>::Constant(dim, h), opts);
    return {res.x, -res.value, res.evaluations, res.converged};
}

}  // namespace detail

/// ARMA(p,q) fit by maximizing the AR(r) approximation to the likelihood.
template <typename Scalar>
FitResult<Scalar> fit_arma(const TimeSeries<Scalar>& z, Index p, Index q, const ArmaFitOptions<Scalar>& opts = {})
{
    if (p < 0 || q < 0)
        throw DomainError("ARMA orders must be non-negative");
    if (q == 0) {
        Vector<Scalar> zeta0 = Vector<Scalar>::Zero(p);
        if (opts.init != ArmaInit::Origin)
            zeta0 = detail::arma_start(z, p, q, opts);
        return fit_ar_from(z, p, opts.mean_mode, zeta0, opts.simplex);
    }
    const Index n = z.size();
    const Index r = opts.r;
    if (r < std::max(p, q) || r < 1)
        throw DomainError("approximation order must be at least max(p, q)");
    if (2 * r > n)
        throw OrderTooLargeError("approximation order " + std::to_string(r) + " exceeds n/2 for n = "
                                 + std::to_string(n));

    const ArmaBox box{p, q};
    const Vector<Scalar> x0 = clip_to_box(detail::arma_start(z, p, q, opts));
    const Scalar zbar = z.mean();
    const ArmaLikelihood<Scalar> base(z, p, q, r, zbar);

    FitResult<Scalar> out;
    Vector<Scalar> x;
    Scalar mu = zbar;
    if (opts.mean_mode == MeanMode::SampleMean) {
        const detail::StepOne<Scalar> s = detail::maximize_arma(base, x0, opts.simplex);
        x = s.x;
        out.converged = s.converged;
        out.iterations = 1;
        out.evaluations = s.evaluations;
        out.loglik_history = {s.loglik};
    } else {
        Scalar ell0 = -std::numeric_limits<Scalar>::infinity();
        try {
            ell0 = base(x0).loglik;
        } catch (const Error&) {
        }
        std::function<detail::StepOne<Scalar>(Scalar, const Vector<Scalar>&)> step1 =
            [&](Scalar m, const Vector<Scalar>& warm) {
                return detail::maximize_arma(base.with_mean(m), warm, opts.simplex);
            };
        std::function<Scalar(const Vector<Scalar>&)> step2 = [&](const Vector<Scalar>& xi) {
            return exact_mean_mle(z, base.predictor(xi).phi);
        };
        const auto it = detail::alternate_mean<Scalar>(zbar, x0, ell0, step1, step2);
        x = it.x;
        mu = it.mu;
        out.iterations = it.iterations;
        out.evaluations = it.evaluations;
        out.loglik_history = it.history;
        out.max_iterations_reached = !it.mean_converged;
        out.converged = it.mean_converged && it.optimizer_converged;
    }

    const LikelihoodValue<Scalar> final_value = base.with_mean(mu)(x);
    out.phi = box.phi(x);
    out.theta = box.theta(x);
    out.mu = mu;
    out.sigma2 = final_value.sigma2;
    out.loglik = final_value.loglik;
    out.r = r;
    out.flops_per_eval = base.flops_per_eval();

    if (opts.kl_diagnostic && n <= kKlDiagnosticMaxN) {
        ArmaSpec<Scalar> fitted{out.phi, out.theta, Scalar(0), Scalar(1)};
        try {
            const Scalar kl = kl_discrepancy(fitted, mmse_ar(fitted, r), n);
            out.kl_diagnostic = kl;
            out.approximation_degraded = !(kl <= Scalar(opts.kl_threshold));
        } catch (const Error&) {
            out.approximation_degraded = true;
        }
    }
    return out;
}

}  // namespace fastarma
