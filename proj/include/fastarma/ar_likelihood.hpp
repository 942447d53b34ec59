#pragma once

#include <cmath>
#include <limits>
#include <memory>

#include "fastarma/champernowne.hpp"
#include "fastarma/flops.hpp"
#include "fastarma/optimize.hpp"
#include "fastarma/param_transform.hpp"
#include "fastarma/types.hpp"

namespace fastarma {

/// S(phi, mu) = beta' D beta with beta = (-1, phi).
template <typename Scalar, typename Derived>
Scalar quadratic_form(const ChampernowneState<Scalar>& state, const Eigen::MatrixBase<Derived>& phi,
                      FlopCounter* counter = nullptr)
{
    const Index r = state.r();
    if (phi.size() != r)
        throw DomainError("coefficient vector length " + std::to_string(phi.size())
                          + " does not match Champernowne order " + std::to_string(r));
    const Matrix<Scalar>& d = state.D();
    Scalar s = d(0, 0);
    for (Index j = 1; j <= r; ++j) {
        Scalar row = -d(j, 0);
        for (Index k = 1; k <= r; ++k)
            row += d(j, k) * phi(k - 1);
        s += phi(j - 1) * row - d(0, j) * phi(j - 1);
    }
    detail::charge(counter, static_cast<std::uint64_t>(2 * (r + 1) * (r + 1)));
    return s;
}

template <typename Scalar>
struct LikelihoodValue {
    /// -(n/2) log(S/n) - (1/2) log g_p
    Scalar loglik = 0;
    /// S / n, the profiled innovation variance.
    Scalar sigma2 = 0;
    Scalar S = 0;
};

namespace detail {

template <typename Scalar>
LikelihoodValue<Scalar> concentrated_from(Scalar S, Scalar log_gp, Index n)
{
    if (!(S > Scalar(0)) || !std::isfinite(static_cast<double>(S)))
        throw DegenerateDataError("quadratic form is not positive; data are degenerate for this order");
    const Scalar nn = Scalar(n);
    return {-nn / 2 * std::log(S / nn) - log_gp / 2, S / nn, S};
}

}  // namespace detail

/// Repeated evaluation of the concentrated AR(r) log-likelihood. After
/// construction nothing here touches the series: each call costs a fixed
/// number of flops that depends on r only.
template <typename Scalar>
class LikelihoodEvaluator {
public:
    explicit LikelihoodEvaluator(ChampernowneState<Scalar> state)
        : state_(std::move(state)),
          counter_(std::make_shared<FlopCounter>()),
          remean_counter_(std::make_shared<FlopCounter>())
    {
    }

    LikelihoodEvaluator(const TimeSeries<Scalar>& z, Index r, Scalar mu)
        : LikelihoodEvaluator(build_champernowne(z, r, mu))
    {
    }

    const ChampernowneState<Scalar>& state() const noexcept { return state_; }
    Index n() const noexcept { return state_.n(); }
    Index r() const noexcept { return state_.r(); }
    Scalar mu() const noexcept { return state_.mu(); }

    /// Likelihood evaluations and their flops. Shared by every evaluator
    /// derived from this one through with_mean.
    const FlopCounter& counter() const noexcept { return *counter_; }
    /// Flops spent moving D between means.
    const FlopCounter& remean_counter() const noexcept { return *remean_counter_; }

    /// Flops charged to one evaluation (identical for every call at fixed r).
    long long flops_per_eval() const noexcept
    {
        const auto calls = counter_->calls();
        return calls ? static_cast<long long>(counter_->flops() / calls) : 0;
    }

    /// Same data at another mean; O(r^2), shares the counters.
    LikelihoodEvaluator with_mean(Scalar mu) const
    {
        LikelihoodEvaluator out(*this);
        out.state_ = remean(state_, mu, remean_counter_.get());
        remean_counter_->add_call();
        return out;
    }

    /// L_c at partial autocorrelations zeta (length r) and the current mean.
    LikelihoodValue<Scalar> operator()(const PacfVector<Scalar>& zeta) const
    {
        FlopCounter local;
        const Vector<Scalar> phi = pacf_to_ar(zeta, &local);
        const Scalar S = quadratic_form(state_, phi, &local);
        const Scalar log_gp = gp_determinant(zeta, &local).log_gp;
        record(local.flops() + 6);
        return detail::concentrated_from(S, log_gp, n());
    }

    /// L_c at AR coefficients phi whose partial autocorrelations are already
    /// known (the MMSE route gets both from one Levinson pass).
    LikelihoodValue<Scalar> evaluate(const Vector<Scalar>& phi, Scalar log_gp, std::uint64_t extra_flops = 0) const
    {
        FlopCounter local;
        const Scalar S = quadratic_form(state_, phi, &local);
        record(local.flops() + extra_flops + 6);
        return detail::concentrated_from(S, log_gp, n());
    }

private:
    void record(std::uint64_t flops) const
    {
        counter_->add_call();
        counter_->add_flops(flops);
    }

    ChampernowneState<Scalar> state_;
    std::shared_ptr<FlopCounter> counter_;
    std::shared_ptr<FlopCounter> remean_counter_;
};

/// L_c(phi(zeta), mu). A mean different from the evaluator's is handled by
/// an O(r^2) re-centring of D.
template <typename Scalar>
LikelihoodValue<Scalar> concentrated_loglik(const LikelihoodEvaluator<Scalar>& evaluator,
                                            const PacfVector<Scalar>& zeta, Scalar mu)
{
    if (zeta.size() != evaluator.r())
        throw DomainError("partial autocorrelation vector has the wrong length");
    if (mu == evaluator.mu())
        return evaluator(zeta);
    return evaluator.with_mean(mu)(zeta);
}

template <typename Scalar>
struct ArMaximum {
    Vector<Scalar> zeta;
    LikelihoodValue<Scalar> value;
    long long evaluations = 0;
    bool converged = false;
};

/// Maximizes L_c over the zeta box at the evaluator's mean.
template <typename Scalar>
ArMaximum<Scalar> maximize_ar(const LikelihoodEvaluator<Scalar>& evaluator, const Vector<Scalar>& zeta0,
                              const SimplexOptions& opts = {})
{
    const Index p = evaluator.r();
    const Scalar h = Scalar(kBoxHalfWidth);
    auto objective = [&](const Vector<Scalar>& x) -> Scalar {
        try {
            return -evaluator(PacfVector<Scalar>(x)).loglik;
        } catch (const DegenerateDataError&) {
            return std::numeric_limits<Scalar>::infinity();
        }
    };
    const auto res = minimize_simplex<Scalar>(objective, clip_to_box(zeta0), Vector<Scalar>::Constant(p, -h),
                                              Vector<Scalar>::Constant(p, h), opts);
    ArMaximum<Scalar> out;
    out.zeta = res.x;
    out.value = evaluator(PacfVector<Scalar>(res.x));
    out.evaluations = res.evaluations + 1;
    out.converged = res.converged;
    return out;
}

}  // namespace fastarma
