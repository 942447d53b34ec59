#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "fastarma/flops.hpp"
#include "fastarma/param_transform.hpp"
#include "fastarma/types.hpp"

namespace fastarma {

/// Autocovariances gamma_0..gamma_K of a stationary model.
template <typename Scalar>
struct AcvfSequence {
    Vector<Scalar> gamma;
    std::string model;

    Index max_lag() const noexcept { return gamma.size() - 1; }
    Scalar operator[](Index k) const { return k <= max_lag() ? gamma(k) : Scalar(0); }

    /// The n x n covariance matrix of n consecutive observations. Lags
    /// beyond max_lag are taken as zero (exact for finite MA sequences).
    Matrix<Scalar> toeplitz(Index n) const
    {
        Matrix<Scalar> out(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
                out(i, j) = (*this)[std::abs(i - j)];
        return out;
    }
};

namespace detail {

template <typename Scalar>
std::string describe(const ArmaSpec<Scalar>& spec)
{
    std::ostringstream os;
    os << "ARMA(" << spec.p() << "," << spec.q() << ") phi=[";
    for (Index j = 0; j < spec.p(); ++j)
        os << (j ? "," : "") << spec.phi(j);
    os << "] theta=[";
    for (Index j = 0; j < spec.q(); ++j)
        os << (j ? "," : "") << spec.theta(j);
    os << "] sigma2=" << spec.sigma2;
    return os.str();
}

}  // namespace detail

/// psi_0..psi_L of psi(B) = theta(B)/phi(B), psi_0 = 1.
template <typename Scalar>
Vector<Scalar> psi_weights(const ArmaSpec<Scalar>& spec, Index L)
{
    const Index p = spec.p(), q = spec.q();
    Vector<Scalar> psi(L + 1);
    psi(0) = 1;
    for (Index j = 1; j <= L; ++j) {
        Scalar v = j <= q ? -spec.theta(j - 1) : Scalar(0);
        for (Index i = 1; i <= std::min(j, p); ++i)
            v += spec.phi(i - 1) * psi(j - i);
        psi(j) = v;
    }
    return psi;
}

/// pi_1..pi_r of the inverted form pi(B) = phi(B)/theta(B), written as
/// 1 - pi_1 B - pi_2 B^2 - ... . Obtained by matching coefficients in
/// theta(B) pi(B) = phi(B):
///   pi_k = phi_k - theta_k + sum_{j=1}^{min(q,k-1)} theta_j pi_{k-j}.
template <typename Scalar>
Vector<Scalar> pi_weights(const ArmaSpec<Scalar>& spec, Index r)
{
    if (!is_invertible(spec.theta))
        throw DomainError("pi-weights require an invertible MA polynomial");
    const Index p = spec.p(), q = spec.q();
    Vector<Scalar> pi(r);
    for (Index k = 1; k <= r; ++k) {
        Scalar v = (k <= p ? spec.phi(k - 1) : Scalar(0)) - (k <= q ? spec.theta(k - 1) : Scalar(0));
        for (Index j = 1; j <= std::min(q, k - 1); ++j)
            v += spec.theta(j - 1) * pi(k - j - 1);
        pi(k - 1) = v;
    }
    return pi;
}

/// Exact autocovariances of a causal ARMA(p,q) up to lag K.
///
/// gamma_0..gamma_m (m = max(p,q)) come from the linear system
///   gamma_k - sum_j phi_j gamma_|k-j| = sigma2 sum_{j=k}^{q} theta'_j psi_{j-k},
/// theta'_0 = 1, theta'_j = -theta_j; higher lags follow the AR recursion.
template <typename Scalar>
AcvfSequence<Scalar> arma_acvf(const ArmaSpec<Scalar>& spec, Index K, FlopCounter* counter = nullptr)
{
    spec.validate();
    if (K < 0)
        throw DomainError("lag count must be non-negative");
    if (!is_causal(spec.phi))
        throw DomainError("ARMA autocovariance requires a causal AR polynomial");

    const Index p = spec.p(), q = spec.q();
    const Index m = std::max(p, q);
    const Vector<Scalar> psi = psi_weights(spec, q);
    auto theta_prime = [&](Index j) { return j == 0 ? Scalar(1) : -spec.theta(j - 1); };

    Vector<Scalar> rhs(m + 1);
    for (Index k = 0; k <= m; ++k) {
        Scalar s = 0;
        for (Index j = k; j <= q; ++j)
            s += theta_prime(j) * psi(j - k);
        rhs(k) = spec.sigma2 * s;
    }

    Vector<Scalar> head;
    if (p == 0) {
        head = rhs;
    } else {
        Matrix<Scalar> A = Matrix<Scalar>::Identity(m + 1, m + 1);
        for (Index k = 0; k <= m; ++k)
            for (Index j = 1; j <= p; ++j)
                A(k, std::abs(k - j)) -= spec.phi(j - 1);
        head = A.partialPivLu().solve(rhs);
        detail::charge(counter, static_cast<std::uint64_t>((m + 1) * (m + 1) * (m + 1)));
    }

    Vector<Scalar> gamma(K + 1);
    for (Index k = 0; k <= K; ++k) {
        if (k <= m) {
            gamma(k) = head(k);
        } else {
            Scalar v = 0;
            for (Index j = 1; j <= p; ++j)
                v += spec.phi(j - 1) * gamma(k - j);
            gamma(k) = v;
        }
    }
    detail::charge(counter, static_cast<std::uint64_t>(2 * (K + 1) * (p + 1) + (m + 1) * (q + 1)));
    return {std::move(gamma), detail::describe(spec)};
}

/// Autocovariances of u_t = phi(B) a_t; zero beyond lag p.
template <typename Derived>
AcvfSequence<typename Derived::Scalar> u_process_acvf(const Eigen::MatrixBase<Derived>& phi,
                                                      typename Derived::Scalar sigma2 = 1)
{
    using Scalar = typename Derived::Scalar;
    const Index p = phi.size();
    Vector<Scalar> c(p + 1);
    c(0) = 1;
    c.tail(p) = -phi;
    Vector<Scalar> gamma(p + 1);
    for (Index k = 0; k <= p; ++k)
        gamma(k) = sigma2 * c.head(p + 1 - k).dot(c.tail(p + 1 - k));
    return {std::move(gamma), "u = phi(B) a"};
}

/// Autocovariances of fractionally differenced white noise,
/// (1 - B)^d z_t = a_t with |d| < 1/2.
template <typename Scalar>
AcvfSequence<Scalar> fdwn_acvf(Scalar d, Index K, Scalar sigma2 = 1)
{
    if (!(std::abs(d) < Scalar(0.5)))
        throw DomainError("memory parameter must lie in (-0.5, 0.5)");
    if (K < 0)
        throw DomainError("lag count must be non-negative");
    Vector<Scalar> gamma(K + 1);
    gamma(0) = sigma2 * std::exp(std::lgamma(Scalar(1) - 2 * d) - 2 * std::lgamma(Scalar(1) - d));
    for (Index k = 1; k <= K; ++k)
        gamma(k) = gamma(k - 1) * (Scalar(k - 1) + d) / (Scalar(k) - d);
    std::ostringstream os;
    os << "FDWN d=" << d;
    return {std::move(gamma), os.str()};
}

}  // namespace fastarma
