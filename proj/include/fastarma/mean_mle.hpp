#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>

#include "fastarma/acvf.hpp"
#include "fastarma/ar_likelihood.hpp"
#include "fastarma/estimators.hpp"
#include "fastarma/param_transform.hpp"
#include "fastarma/types.hpp"

namespace fastarma {

/// MeanMLE iteration cap M.
inline constexpr int kMaxMeanIterations = 5;

/// |l_{i+1} - l_i| below this ends the MeanMLE alternation.
inline constexpr double kMeanLoglikTolerance = 1e-6;

/// Upper-left p x p corner of Omega in Gamma_n^{-1} = Gamma_dot - Omega:
/// Omega_ij = sum_{k=min(i,j)}^{p-|i-j|} phi_k phi_{k+|i-j|}.
template <typename Derived>
Matrix<typename Derived::Scalar> omega_block(const Eigen::MatrixBase<Derived>& phi)
{
    using Scalar = typename Derived::Scalar;
    const Index p = phi.size();
    Matrix<Scalar> omega = Matrix<Scalar>::Zero(p, p);
    for (Index i = 1; i <= p; ++i) {
        for (Index j = 1; j <= p; ++j) {
            const Index d = std::abs(i - j);
            Scalar s = 0;
            for (Index k = std::min(i, j); k <= p - d; ++k)
                s += phi(k - 1) * phi(k + d - 1);
            omega(i - 1, j - 1) = s;
        }
    }
    return omega;
}

/// Gamma_n^{-1} of a causal AR(p) with unit innovation variance, assembled
/// densely from the banded matrix of gamma^(u) minus the two corner
/// blocks. The lower-right block is the upper-left one reversed in both
/// directions. Diagnostic use; the estimator works with RowVectorSummary.
template <typename Derived>
Matrix<typename Derived::Scalar> zinde_walsh_inverse(const Eigen::MatrixBase<Derived>& phi, Index n)
{
    using Scalar = typename Derived::Scalar;
    const Index p = phi.size();
    if (n < 2 * p)
        throw OrderTooLargeError("Zinde-Walsh inverse requires n >= 2p");
    Matrix<Scalar> out = u_process_acvf(phi).toeplitz(n);
    const Matrix<Scalar> omega = omega_block(phi);
    out.topLeftCorner(p, p) -= omega;
    out.bottomRightCorner(p, p) -= omega.reverse();
    return out;
}

/// Compressed form of the row vector 1_n' Gamma_n^{-1} (unit innovation
/// variance): phi(1)^2 everywhere, minus eps + kappa corrections on the
/// first and last p positions (mirrored).
template <typename Scalar>
struct RowVectorSummary {
    Scalar phi1sq = 1;
    /// Column sums of the Omega corner, eps_1..eps_p.
    Vector<Scalar> eps;
    /// kappa_i = gamma^(u)_i + ... + gamma^(u)_p: the part of the band of
    /// Gamma_dot cut off in column i.
    Vector<Scalar> kappa;
    Index n = 0;

    Index p() const noexcept { return eps.size(); }

    /// Correction subtracted at distance s (0-based) from either end.
    Scalar edge(Index s) const { return eps(s) + kappa(s); }

    Scalar weight(Index t) const
    {
        const Index p_ = p();
        if (t < p_)
            return phi1sq - edge(t);
        if (t >= n - p_)
            return phi1sq - edge(n - 1 - t);
        return phi1sq;
    }

    Vector<Scalar> expand() const
    {
        Vector<Scalar> w(n);
        for (Index t = 0; t < n; ++t)
            w(t) = weight(t);
        return w;
    }

    /// 1' Gamma^{-1} 1.
    Scalar total() const { return Scalar(n) * phi1sq - 2 * (eps.sum() + kappa.sum()); }
};

/// 1_n' Gamma_n^{-1} for a causal AR(p), O(p^2).
template <typename Derived>
RowVectorSummary<typename Derived::Scalar> row_vector_gamma_inverse(const Eigen::MatrixBase<Derived>& phi, Index n)
{
    using Scalar = typename Derived::Scalar;
    const Index p = phi.size();
    if (n < 2 * p)
        throw OrderTooLargeError("row-vector inverse requires n >= 2p");
    if (!is_causal(phi))
        throw DomainError("row-vector inverse requires causal AR coefficients");
    RowVectorSummary<Scalar> out;
    out.n = n;
    const Scalar phi1 = Scalar(1) - phi.sum();
    out.phi1sq = phi1 * phi1;
    out.eps = omega_block(phi).colwise().sum().transpose();
    const Vector<Scalar> gu = u_process_acvf(phi).gamma;
    out.kappa.resize(p);
    Scalar acc = 0;
    for (Index i = p; i >= 1; --i) {
        acc += gu(i);
        out.kappa(i - 1) = acc;
    }
    return out;
}

/// GLS mean (1' Gamma^{-1} z) / (1' Gamma^{-1} 1) for known AR coefficients,
/// O(n).
template <typename Scalar, typename Derived>
Scalar exact_mean_mle(const TimeSeries<Scalar>& z, const Eigen::MatrixBase<Derived>& phi)
{
    const Index n = z.size();
    const RowVectorSummary<Scalar> w = row_vector_gamma_inverse(phi, n);
    const Vector<Scalar>& x = z.values();
    const Index p = w.p();
    Scalar num = w.phi1sq * x.sum();
    for (Index s = 0; s < p; ++s)
        num -= w.edge(s) * (x(s) + x(n - 1 - s));
    const Scalar den = w.total();
    if (!(den > Scalar(0)))
        throw NumericalError("1' Gamma^{-1} 1 is not positive");
    return num / den;
}

/// Exact efficiency of the sample mean relative to the BLUE,
/// n^2 / ((1' Gamma 1)(1' Gamma^{-1} 1)).
template <typename Scalar>
Scalar blue_efficiency(const AcvfSequence<Scalar>& acvf, Index n)
{
    if (n < 1)
        throw DomainError("series length must be positive");
    const Matrix<Scalar> gamma = acvf.toeplitz(n);
    const Eigen::LLT<Matrix<Scalar>> llt(gamma);
    if (llt.info() != Eigen::Success)
        throw NumericalError("autocovariance matrix is not positive definite");
    const Vector<Scalar> ones = Vector<Scalar>::Ones(n);
    const Scalar quad = ones.dot(gamma * ones);
    const Scalar inv = ones.dot(llt.solve(ones));
    return Scalar(n) * Scalar(n) / (quad * inv);
}

namespace detail {

template <typename Scalar>
struct StepOne {
    Vector<Scalar> x;
    Scalar loglik = 0;
    long long evaluations = 0;
    bool converged = false;
};

template <typename Scalar>
struct MeanIteration {
    Vector<Scalar> x;
    Scalar mu = 0;
    std::vector<Scalar> history;
    int iterations = 0;
    long long evaluations = 0;
    bool optimizer_converged = true;
    bool mean_converged = false;
};

// Alternating maximization: Step 1 maximizes over the coefficients at the
// current mean, Step 2 re-solves the mean in closed form. Stops when l
// settles or the counter passes kMaxMeanIterations.
template <typename Scalar>
MeanIteration<Scalar> alternate_mean(Scalar mu0, Vector<Scalar> x0, Scalar ell0,
                                     const std::function<StepOne<Scalar>(Scalar, const Vector<Scalar>&)>& step1,
                                     const std::function<Scalar(const Vector<Scalar>&)>& step2)
{
    MeanIteration<Scalar> it;
    it.mu = mu0;
    it.x = std::move(x0);
    it.history.push_back(ell0);
    for (int i = 0;; ++i) {
        const StepOne<Scalar> s1 = step1(it.mu, it.x);
        it.x = s1.x;
        it.evaluations += s1.evaluations;
        it.optimizer_converged = it.optimizer_converged && s1.converged;
        it.history.push_back(s1.loglik);
        ++it.iterations;
        it.mu = step2(it.x);
        const Scalar prev = it.history[it.history.size() - 2];
        if (std::abs(s1.loglik - prev) < Scalar(kMeanLoglikTolerance)) {
            it.mean_converged = true;
            break;
        }
        if (i > kMaxMeanIterations)
            break;
    }
    return it;
}

}  // namespace detail

namespace detail {

template <typename Scalar>
FitResult<Scalar> mean_mle_from(const TimeSeries<Scalar>& z, Index p, const Vector<Scalar>& zeta_start,
                                const SimplexOptions& opts)
{
    const Scalar zbar = z.mean();
    const LikelihoodEvaluator<Scalar> base(z, p, zbar);
    const Vector<Scalar> zeta0 = clip_to_box(zeta_start);
    const Scalar ell0 = base(PacfVector<Scalar>(zeta0)).loglik;

    std::function<StepOne<Scalar>(Scalar, const Vector<Scalar>&)> step1 =
        [&](Scalar mu, const Vector<Scalar>& warm) {
            const LikelihoodEvaluator<Scalar> ev = base.with_mean(mu);
            const ArMaximum<Scalar> m = maximize_ar(ev, warm, opts);
            return StepOne<Scalar>{m.zeta, m.value.loglik, m.evaluations, m.converged};
        };
    std::function<Scalar(const Vector<Scalar>&)> step2 = [&](const Vector<Scalar>& zeta) {
        return exact_mean_mle(z, pacf_to_ar(PacfVector<Scalar>(zeta)));
    };
    const auto it = alternate_mean<Scalar>(zbar, zeta0, ell0, step1, step2);

    const PacfVector<Scalar> zeta(it.x);
    const LikelihoodValue<Scalar> final_value = base.with_mean(it.mu)(zeta);

    FitResult<Scalar> out;
    out.phi = pacf_to_ar(zeta);
    out.theta = Vector<Scalar>(0);
    out.mu = it.mu;
    out.sigma2 = final_value.sigma2;
    out.loglik = final_value.loglik;
    out.iterations = it.iterations;
    out.evaluations = it.evaluations;
    out.loglik_history = it.history;
    out.max_iterations_reached = !it.mean_converged;
    out.converged = it.mean_converged && it.optimizer_converged;
    out.flops_per_eval = base.flops_per_eval();
    return out;
}

}  // namespace detail

/// MeanMLE for AR(p): mu^(0) = sample mean, then alternate between the
/// numerical maximization of L_c over zeta and the exact mean. D is moved
/// between means with remean, so no iteration rebuilds it from the data.
template <typename Scalar>
FitResult<Scalar> mean_mle_iterate(const TimeSeries<Scalar>& z, Index p, ArInit init = ArInit::Burg,
                                   const SimplexOptions& opts = {})
{
    if (z.size() < 2 * p)
        throw OrderTooLargeError("MeanMLE: series too short for the AR order");
    Vector<Scalar> zeta0 = Vector<Scalar>::Zero(p);
    if (init == ArInit::Burg && p > 0)
        zeta0 = burg(z, p).zeta;
    return detail::mean_mle_from(z, p, zeta0, opts);
}

}  // namespace fastarma
