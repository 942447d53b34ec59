#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "fastarma/flops.hpp"
#include "fastarma/types.hpp"

namespace fastarma {

/// Partial autocorrelations zeta_1..zeta_p, each strictly inside (-1, 1).
template <typename Scalar>
class PacfVector {
public:
    PacfVector() = default;

    explicit PacfVector(Vector<Scalar> zeta) : zeta_(std::move(zeta))
    {
        for (Index j = 0; j < zeta_.size(); ++j) {
            if (!(std::abs(zeta_(j)) < Scalar(1)))
                throw DomainError("partial autocorrelation outside (-1, 1)");
        }
    }

    const Vector<Scalar>& values() const noexcept { return zeta_; }
    Index size() const noexcept { return zeta_.size(); }
    Scalar operator[](Index j) const { return zeta_(j); }

private:
    Vector<Scalar> zeta_;
};

/// det(Gamma_p / sigma_a^2), kept alongside its logarithm since the product
/// overflows long before the log does.
template <typename Scalar>
struct DeterminantFactor {
    Scalar log_gp = Scalar(0);
    Scalar gp() const { return std::exp(log_gp); }
};

/// Margin used by is_causal: a recursion step with |zeta| >= 1 - margin
/// counts as a failure.
inline constexpr double kCausalMargin = 1e-12;

/// Half-width of the optimizer box in zeta coordinates.
inline constexpr double kBoxHalfWidth = 1.0 - 1e-7;

/// Clip used when a two-stage estimate is pulled into the box to serve as
/// a starting point.
inline constexpr double kInitClip = 1.0 - 1e-4;

/// Durbin-Levinson forward map zeta -> phi.
template <typename Scalar>
Vector<Scalar> pacf_to_ar(const PacfVector<Scalar>& zeta, FlopCounter* counter = nullptr)
{
    const Index p = zeta.size();
    Vector<Scalar> phi = Vector<Scalar>::Zero(p);
    Vector<Scalar> prev(p);
    for (Index k = 0; k < p; ++k) {
        const Scalar z = zeta[k];
        prev.head(k) = phi.head(k);
        for (Index j = 0; j < k; ++j)
            phi(j) = prev(j) - z * prev(k - 1 - j);
        phi(k) = z;
        detail::charge(counter, 2 * static_cast<std::uint64_t>(k));
    }
    return phi;
}

namespace detail {

// Levinson step-down. Returns false as soon as a reflection coefficient
// leaves (-limit, limit); zeta is then only partially filled.
template <typename Derived, typename Scalar = typename Derived::Scalar>
bool step_down(const Eigen::MatrixBase<Derived>& phi_in, Scalar limit, Vector<Scalar>& zeta)
{
    const Index p = phi_in.size();
    Vector<Scalar> phi = phi_in;
    Vector<Scalar> next(p);
    zeta.setZero(p);
    for (Index k = p - 1; k >= 0; --k) {
        const Scalar z = phi(k);
        if (!std::isfinite(static_cast<double>(z)) || !(std::abs(z) < limit))
            return false;
        zeta(k) = z;
        const Scalar denom = Scalar(1) - z * z;
        for (Index j = 0; j < k; ++j)
            next(j) = (phi(j) + z * phi(k - 1 - j)) / denom;
        phi.head(k) = next.head(k);
    }
    return true;
}

}  // namespace detail

/// True iff every root of 1 - phi_1 B - ... - phi_p B^p lies strictly
/// outside the unit circle.
template <typename Derived>
bool is_causal(const Eigen::MatrixBase<Derived>& phi)
{
    using Scalar = typename Derived::Scalar;
    if (!phi.allFinite())
        return false;
    Vector<Scalar> zeta;
    return detail::step_down(phi, Scalar(1) - Scalar(kCausalMargin), zeta);
}

/// theta(B) uses the same sign convention as phi(B), so invertibility is
/// causality of the MA polynomial.
template <typename Derived>
bool is_invertible(const Eigen::MatrixBase<Derived>& theta)
{
    return is_causal(theta);
}

/// Inverse of pacf_to_ar.
template <typename Derived>
PacfVector<typename Derived::Scalar> ar_to_pacf(const Eigen::MatrixBase<Derived>& phi)
{
    using Scalar = typename Derived::Scalar;
    Vector<Scalar> zeta;
    if (!phi.allFinite() || !detail::step_down(phi, Scalar(1), zeta))
        throw DomainError("AR coefficients are not causal-stationary");
    return PacfVector<Scalar>(std::move(zeta));
}

/// g_p = prod_j (1 - zeta_j^2)^(-j), evaluated as a log-sum.
template <typename Scalar>
DeterminantFactor<Scalar> gp_determinant(const PacfVector<Scalar>& zeta, FlopCounter* counter = nullptr)
{
    Scalar log_gp = 0;
    for (Index j = 0; j < zeta.size(); ++j)
        log_gp -= Scalar(j + 1) * std::log1p(-zeta[j] * zeta[j]);
    detail::charge(counter, 4 * static_cast<std::uint64_t>(zeta.size()));
    return {log_gp};
}

/// Clamps each partial autocorrelation to [-half_width, half_width].
template <typename Derived>
Vector<typename Derived::Scalar> clip_to_box(const Eigen::MatrixBase<Derived>& zeta,
                                              double half_width = kBoxHalfWidth)
{
    using Scalar = typename Derived::Scalar;
    const Scalar h = Scalar(half_width);
    return zeta.derived().cwiseMax(-h).cwiseMin(h);
}

/// Maps arbitrary AR-type coefficients to box coordinates. Non-causal input
/// is shrunk towards zero (phi_k -> phi_k s^k pushes every root outward by
/// 1/s) until it becomes causal, then clipped.
template <typename Derived>
Vector<typename Derived::Scalar> project_to_box(const Eigen::MatrixBase<Derived>& phi,
                                                 double half_width = kInitClip)
{
    using Scalar = typename Derived::Scalar;
    Vector<Scalar> shrunk = phi;
    if (!shrunk.allFinite())
        return Vector<Scalar>::Zero(phi.size());
    Vector<Scalar> zeta;
    for (int attempt = 0; attempt < 200; ++attempt) {
        if (detail::step_down(shrunk, Scalar(1), zeta))
            return clip_to_box(zeta, half_width);
        Scalar s = 1;
        for (Index k = 0; k < shrunk.size(); ++k) {
            s *= Scalar(0.95);
            shrunk(k) *= s;
        }
    }
    return Vector<Scalar>::Zero(phi.size());
}

/// Layout of the optimizer's parameter vector: (zeta_AR, zeta_MA).
struct ArmaBox {
    Index p = 0;
    Index q = 0;

    Index dim() const noexcept { return p + q; }

    template <typename Scalar>
    Vector<Scalar> pack(const Vector<Scalar>& zeta_ar, const Vector<Scalar>& zeta_ma) const
    {
        Vector<Scalar> x(dim());
        x << zeta_ar, zeta_ma;
        return x;
    }

    template <typename Scalar>
    Vector<Scalar> phi(const Vector<Scalar>& x, FlopCounter* counter = nullptr) const
    {
        return pacf_to_ar(PacfVector<Scalar>(Vector<Scalar>(x.head(p))), counter);
    }

    template <typename Scalar>
    Vector<Scalar> theta(const Vector<Scalar>& x, FlopCounter* counter = nullptr) const
    {
        return pacf_to_ar(PacfVector<Scalar>(Vector<Scalar>(x.tail(q))), counter);
    }
};

}  // namespace fastarma
