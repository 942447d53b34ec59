#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

#include "fastarma/flops.hpp"
#include "fastarma/param_transform.hpp"
#include "fastarma/types.hpp"

namespace fastarma {

/// Order-r solution of the Yule-Walker equations for an autocovariance
/// sequence, with the reflection coefficients and prediction variances
/// produced along the way.
template <typename Scalar>
struct LevinsonResult {
    Vector<Scalar> phi;
    Vector<Scalar> zeta;
    /// One-step prediction error variance at order r.
    Scalar variance = 0;
    /// log g_r = -sum_j j log(1 - zeta_j^2).
    Scalar log_gp = 0;
};

/// Durbin-Levinson recursion on gamma_0..gamma_r. O(r^2).
template <typename Derived>
LevinsonResult<typename Derived::Scalar> levinson_durbin(const Eigen::MatrixBase<Derived>& gamma, Index r,
                                                         FlopCounter* counter = nullptr)
{
    using Scalar = typename Derived::Scalar;
    if (gamma.size() < r + 1)
        throw DomainError("autocovariance sequence shorter than the requested order");
    if (!(gamma(0) > Scalar(0)))
        throw DomainError("autocovariance at lag 0 must be positive");
    LevinsonResult<Scalar> out;
    out.phi = Vector<Scalar>::Zero(r);
    out.zeta = Vector<Scalar>::Zero(r);
    Vector<Scalar> prev(r);
    Scalar v = gamma(0);
    for (Index k = 1; k <= r; ++k) {
        Scalar num = gamma(k);
        for (Index j = 1; j < k; ++j)
            num -= out.phi(j - 1) * gamma(k - j);
        const Scalar z = num / v;
        if (!(std::abs(z) < Scalar(1)))
            throw NumericalError("autocovariance sequence is not positive definite");
        prev.head(k - 1) = out.phi.head(k - 1);
        for (Index j = 1; j < k; ++j)
            out.phi(j - 1) = prev(j - 1) - z * prev(k - 1 - j);
        out.phi(k - 1) = z;
        out.zeta(k - 1) = z;
        v *= Scalar(1) - z * z;
        out.log_gp -= Scalar(k) * std::log1p(-z * z);
    }
    out.variance = v;
    detail::charge(counter, static_cast<std::uint64_t>(4 * r * r + 6 * r));
    return out;
}

/// Long-AR order shared by the two-stage estimators and HR initialization:
/// ceil(min(n/4, 10 log10 n)).
inline Index long_ar_order(Index n)
{
    const double v = std::min(static_cast<double>(n) / 4.0, 10.0 * std::log10(static_cast<double>(n)));
    return std::max<Index>(1, static_cast<Index>(std::ceil(v)));
}

template <typename Scalar>
struct BurgFit {
    Vector<Scalar> phi;
    Vector<Scalar> zeta;
    Scalar sigma2 = 0;
};

/// Burg's method on the mean-corrected series: reflection coefficients
/// minimize the summed forward and backward prediction error power, so
/// every |zeta_k| < 1.
template <typename Scalar>
BurgFit<Scalar> burg(const TimeSeries<Scalar>& z, Index p)
{
    const Index n = z.size();
    if (p < 0 || n <= p)
        throw OrderTooLargeError("Burg requires n > p");
    const Vector<Scalar> y = z.values().array() - z.mean();
    Scalar sigma2 = y.squaredNorm() / Scalar(n);
    if (!(sigma2 > Scalar(0)))
        throw DegenerateDataError("Burg: series has zero variance");

    Vector<Scalar> f = y, b = y;
    BurgFit<Scalar> out;
    out.phi = Vector<Scalar>::Zero(p);
    out.zeta = Vector<Scalar>::Zero(p);
    Vector<Scalar> prev(p);
    for (Index k = 1; k <= p; ++k) {
        // forward errors f_t, t = k..n-1; backward errors b_{t-1}
        const Index len = n - k;
        const auto fk = f.segment(k, len);
        const auto bk = b.segment(k - 1, len);
        const Scalar num = 2 * fk.dot(bk);
        const Scalar den = fk.squaredNorm() + bk.squaredNorm();
        Scalar zk = den > Scalar(0) ? num / den : Scalar(0);
        zk = std::clamp(zk, -Scalar(kBoxHalfWidth), Scalar(kBoxHalfWidth));

        const Vector<Scalar> f_new = fk - zk * bk;
        const Vector<Scalar> b_new = bk - zk * fk;
        f.segment(k, len) = f_new;
        b.segment(k, len) = b_new;

        prev.head(k - 1) = out.phi.head(k - 1);
        for (Index j = 1; j < k; ++j)
            out.phi(j - 1) = prev(j - 1) - zk * prev(k - 1 - j);
        out.phi(k - 1) = zk;
        out.zeta(k - 1) = zk;
        sigma2 *= Scalar(1) - zk * zk;
    }
    out.sigma2 = sigma2;
    return out;
}

namespace detail {

// Innovations of the mean-corrected series under a long AR fit; entries
// before the fit order are left at zero.
template <typename Scalar>
Vector<Scalar> long_ar_residuals(const TimeSeries<Scalar>& z, const Vector<Scalar>& phi)
{
    const Index n = z.size(), m = phi.size();
    const Vector<Scalar> y = z.values().array() - z.mean();
    Vector<Scalar> a = Vector<Scalar>::Zero(n);
    for (Index t = m; t < n; ++t) {
        Scalar v = y(t);
        for (Index j = 1; j <= m; ++j)
            v -= phi(j - 1) * y(t - j);
        a(t) = v;
    }
    return a;
}

}  // namespace detail

template <typename Scalar>
struct HannanRissanenFit {
    /// Raw stage-2 estimates; may be non-causal or non-invertible.
    ArmaSpec<Scalar> spec;
    bool causal = true;
    bool invertible = true;
    Index long_order = 0;
};

/// Two-stage Hannan-Rissanen: long Burg AR for the innovations, then least
/// squares of z_t on (1, z_{t-1..t-p}, a_{t-1..t-q}).
template <typename Scalar>
HannanRissanenFit<Scalar> hannan_rissanen(const TimeSeries<Scalar>& z, Index p, Index q)
{
    const Index n = z.size();
    const Index m = q > 0 ? long_ar_order(n) : 0;
    const Index start = std::max(p, m + q);
    const Index rows = n - start;
    const Index cols = 1 + p + q;
    if (rows <= cols)
        throw OrderTooLargeError("series too short for Hannan-Rissanen with these orders");

    Vector<Scalar> a = Vector<Scalar>::Zero(n);
    if (q > 0)
        a = detail::long_ar_residuals(z, burg(z, m).phi);

    const Vector<Scalar>& x = z.values();
    Matrix<Scalar> design(rows, cols);
    Vector<Scalar> target(rows);
    for (Index row = 0; row < rows; ++row) {
        const Index t = start + row;
        design(row, 0) = 1;
        for (Index i = 1; i <= p; ++i)
            design(row, i) = x(t - i);
        for (Index j = 1; j <= q; ++j)
            design(row, p + j) = a(t - j);
        target(row) = x(t);
    }
    const Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(design);
    if (qr.rank() < cols)
        throw NumericalError("Hannan-Rissanen regression is rank deficient");
    const Vector<Scalar> beta = qr.solve(target);

    HannanRissanenFit<Scalar> out;
    out.long_order = m;
    out.spec.phi = beta.segment(1, p);
    out.spec.theta = -beta.segment(1 + p, q);
    const Scalar ar_sum = Scalar(1) - out.spec.phi.sum();
    out.spec.mu = std::abs(ar_sum) > Scalar(1e-8) ? beta(0) / ar_sum : z.mean();
    out.spec.sigma2 = (target - design * beta).squaredNorm() / Scalar(rows);
    out.causal = is_causal(out.spec.phi);
    out.invertible = is_invertible(out.spec.theta);
    return out;
}

/// Durbin's (1959) MA(q) estimator. A long AR alpha(B) = 1 - a_1 B - ...
/// - a_m B^m approximates 1/theta(B), so alpha'_0 = 1, alpha'_k = -a_k
/// behaves like an AR(q) sequence with coefficients theta. theta solves the
/// Yule-Walker system built from c_s = sum_k alpha'_k alpha'_{k+s}, which
/// keeps the estimate invertible.
template <typename Scalar>
Vector<Scalar> durbin_ma(const TimeSeries<Scalar>& z, Index q)
{
    if (q < 0)
        throw DomainError("MA order must be non-negative");
    if (q == 0)
        return Vector<Scalar>(0);
    const Index n = z.size();
    const Index m = std::max(long_ar_order(n), q + 1);
    if (n <= m)
        throw OrderTooLargeError("series too short for Durbin's estimator");
    const BurgFit<Scalar> fit = burg(z, m);

    Vector<Scalar> alpha(m + 1);
    alpha(0) = 1;
    alpha.tail(m) = -fit.phi;
    Vector<Scalar> c(q + 1);
    for (Index s = 0; s <= q; ++s)
        c(s) = alpha.head(m + 1 - s).dot(alpha.tail(m + 1 - s));
    return levinson_durbin(c, q).phi;
}

}  // namespace fastarma
