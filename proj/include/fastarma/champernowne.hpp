#pragma once

#include <string>

#include "fastarma/flops.hpp"
#include "fastarma/types.hpp"

namespace fastarma {

/// The (r+1) x (r+1) Champernowne matrix of a series at a given mean,
///
///   D_ij = sum_{k=0}^{n+1-i-j} (z_{i+k} - mu)(z_{j+k} - mu)   (1-based i, j),
///
/// together with the sums needed to move D to another mean without
/// touching the series again. Every entry is a quadratic in mu whose
/// linear coefficient only involves the total and the first/last r
/// partial sums of the centred data.
template <typename Scalar>
class ChampernowneState {
public:
    const Matrix<Scalar>& D() const noexcept { return d_; }
    Index n() const noexcept { return n_; }
    Index r() const noexcept { return d_.rows() - 1; }
    Scalar mu() const noexcept { return mu_; }

    /// C_k = sum_{t=1}^{n-k} y_t y_{t+k}, y = z - mu, k = 0..r.
    const Vector<Scalar>& lag_sums() const noexcept { return lag_sums_; }
    /// head(k) = y_1 + ... + y_k, k = 0..r.
    const Vector<Scalar>& head_sums() const noexcept { return head_; }
    /// tail(k) = y_{n-k+1} + ... + y_n, k = 0..r.
    const Vector<Scalar>& tail_sums() const noexcept { return tail_; }
    Scalar total() const noexcept { return total_; }

    /// Number of products in D_ij (0-based i, j).
    Index term_count(Index i, Index j) const noexcept { return n_ - i - j; }

private:
    template <typename S>
    friend ChampernowneState<S> build_champernowne(const TimeSeries<S>&, Index, S);
    template <typename S>
    friend ChampernowneState<S> remean(const ChampernowneState<S>&, S, FlopCounter*);

    Matrix<Scalar> d_;
    Vector<Scalar> lag_sums_;
    Vector<Scalar> head_;
    Vector<Scalar> tail_;
    Scalar total_ = 0;
    Scalar mu_ = 0;
    Index n_ = 0;
};

/// Builds D via D = C - E in O(n r) work. Requires n >= 2r.
template <typename Scalar>
ChampernowneState<Scalar> build_champernowne(const TimeSeries<Scalar>& z, Index r, Scalar mu0)
{
    const Index n = z.size();
    if (r < 0)
        throw DomainError("AR order must be non-negative");
    if (n < 2 * r)
        throw OrderTooLargeError("order " + std::to_string(r) + " too large for series of length "
                                 + std::to_string(n) + " (need n >= 2r)");

    const Vector<Scalar> y = z.values().array() - mu0;

    ChampernowneState<Scalar> s;
    s.n_ = n;
    s.mu_ = mu0;
    s.total_ = y.sum();

    s.lag_sums_.resize(r + 1);
    for (Index k = 0; k <= r; ++k)
        s.lag_sums_(k) = y.head(n - k).dot(y.tail(n - k));

    s.head_.resize(r + 1);
    s.tail_.resize(r + 1);
    s.head_(0) = s.tail_(0) = 0;
    for (Index k = 1; k <= r; ++k) {
        s.head_(k) = s.head_(k - 1) + y(k - 1);
        s.tail_(k) = s.tail_(k - 1) + y(n - k);
    }

    // E_{i+1,j+1} = E_{i,j} + y_i y_j + y_{n+1-i} y_{n+1-j}, first row and
    // column zero. Only i <= j is computed; D is mirrored afterwards.
    Matrix<Scalar> e = Matrix<Scalar>::Zero(r + 1, r + 1);
    for (Index i = 1; i <= r; ++i)
        for (Index j = i; j <= r; ++j)
            e(i, j) = e(i - 1, j - 1) + y(i - 1) * y(j - 1) + y(n - i) * y(n - j);

    s.d_.resize(r + 1, r + 1);
    for (Index i = 0; i <= r; ++i) {
        for (Index j = i; j <= r; ++j) {
            const Scalar v = s.lag_sums_(j - i) - e(i, j);
            s.d_(i, j) = v;
            s.d_(j, i) = v;
        }
    }
    return s;
}

/// D at a new mean, from the stored sums only: O(r^2) flops, no pass over z.
/// With y = z - mu0 and delta = mu - mu0,
///   D_ij(mu) = D_ij(mu0) - delta (A_ij + A_ji) + delta^2 (n - i - j)
/// where A_ij = total - head(i) - tail(j) (0-based i, j).
template <typename Scalar>
ChampernowneState<Scalar> remean(const ChampernowneState<Scalar>& state, Scalar mu,
                                 FlopCounter* counter = nullptr)
{
    ChampernowneState<Scalar> s = state;
    const Scalar delta = mu - state.mu_;
    s.mu_ = mu;
    if (delta == Scalar(0))
        return s;

    const Index r = state.r();
    const Index n = state.n_;
    const Scalar total = state.total_;
    const Scalar delta2 = delta * delta;
    for (Index i = 0; i <= r; ++i) {
        for (Index j = i; j <= r; ++j) {
            const Scalar a_ij = total - state.head_(i) - state.tail_(j);
            const Scalar a_ji = total - state.head_(j) - state.tail_(i);
            const Scalar v = state.d_(i, j) - delta * (a_ij + a_ji) + delta2 * Scalar(n - i - j);
            s.d_(i, j) = v;
            s.d_(j, i) = v;
        }
    }
    for (Index k = 0; k <= r; ++k) {
        const Scalar cross = 2 * total - state.head_(k) - state.tail_(k);
        s.lag_sums_(k) = state.lag_sums_(k) - delta * cross + delta2 * Scalar(n - k);
        s.head_(k) = state.head_(k) - Scalar(k) * delta;
        s.tail_(k) = state.tail_(k) - Scalar(k) * delta;
    }
    s.total_ = total - Scalar(n) * delta;

    const auto entries = static_cast<std::uint64_t>((r + 1) * (r + 2) / 2);
    detail::charge(counter, 10 * entries + 8 * static_cast<std::uint64_t>(r + 1) + 3);
    return s;
}

}  // namespace fastarma
