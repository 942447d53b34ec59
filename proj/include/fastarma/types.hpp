#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace fastarma {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the admissible parameter region (non-causal AR block,
/// |zeta| >= 1, negative variance, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The requested AR order is too large for the series (n < 2r).
class OrderTooLargeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Data for which the quadratic form degenerates (S <= 0, zero variance).
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

/// A numerical routine failed (non-PD matrix, rank-deficient regression).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Observed series z_1..z_n. Always non-empty and finite.
template <typename Scalar>
class TimeSeries {
public:
    explicit TimeSeries(Vector<Scalar> values) : values_(std::move(values))
    {
        if (values_.size() < 1)
            throw DomainError("time series must contain at least one observation");
        if (!values_.allFinite())
            throw DomainError("time series contains non-finite values");
    }

    explicit TimeSeries(const std::vector<Scalar>& values)
        : TimeSeries(Vector<Scalar>(Eigen::Map<const Vector<Scalar>>(values.data(),
                                                                    static_cast<Index>(values.size()))))
    {
    }

    const Vector<Scalar>& values() const noexcept { return values_; }
    Index size() const noexcept { return values_.size(); }
    Scalar operator[](Index t) const { return values_(t); }
    Scalar mean() const { return values_.mean(); }

private:
    Vector<Scalar> values_;
};

/// phi(B)(z_t - mu) = theta(B) a_t with phi(B) = 1 - phi_1 B - ... and
/// theta(B) = 1 - theta_1 B - ... (Box-Jenkins sign convention).
template <typename Scalar>
struct ArmaSpec {
    Vector<Scalar> phi;
    Vector<Scalar> theta;
    Scalar mu = Scalar(0);
    Scalar sigma2 = Scalar(1);

    Index p() const noexcept { return phi.size(); }
    Index q() const noexcept { return theta.size(); }

    static ArmaSpec white_noise(Scalar sigma2 = Scalar(1))
    {
        return ArmaSpec{Vector<Scalar>(0), Vector<Scalar>(0), Scalar(0), sigma2};
    }

    static ArmaSpec ar(Vector<Scalar> phi, Scalar sigma2 = Scalar(1))
    {
        return ArmaSpec{std::move(phi), Vector<Scalar>(0), Scalar(0), sigma2};
    }

    static ArmaSpec ma(Vector<Scalar> theta, Scalar sigma2 = Scalar(1))
    {
        return ArmaSpec{Vector<Scalar>(0), std::move(theta), Scalar(0), sigma2};
    }

    static ArmaSpec arma11(Scalar phi1, Scalar theta1, Scalar sigma2 = Scalar(1))
    {
        Vector<Scalar> phi(1), theta(1);
        phi << phi1;
        theta << theta1;
        return ArmaSpec{std::move(phi), std::move(theta), Scalar(0), sigma2};
    }

    /// Checks finiteness and sigma2 > 0. Causality is checked by callers
    /// that need it (see is_causal).
    void validate() const
    {
        if (!(sigma2 > Scalar(0)) || !std::isfinite(static_cast<double>(sigma2)))
            throw DomainError("innovation variance must be positive and finite");
        if (!phi.allFinite() || !theta.allFinite() || !std::isfinite(static_cast<double>(mu)))
            throw DomainError("ARMA parameters must be finite");
    }
};

enum class MeanMode { SampleMean, MeanMLE };

enum class ArInit { Zeros, Burg };

enum class ArmaInit { Origin, HRInit, Explicit };

inline const char* to_string(MeanMode m) { return m == MeanMode::SampleMean ? "sample" : "mle"; }

inline const char* to_string(ArmaInit i)
{
    switch (i) {
    case ArmaInit::Origin: return "origin";
    case ArmaInit::HRInit: return "hr";
    case ArmaInit::Explicit: return "explicit";
    }
    return "?";
}

/// Outcome of an AR or ARMA fit.
template <typename Scalar>
struct FitResult {
    Vector<Scalar> phi;
    Vector<Scalar> theta;
    Scalar mu = Scalar(0);
    Scalar sigma2 = Scalar(0);
    /// Concentrated log-likelihood at the estimates (no 2*pi or profiling
    /// constants).
    Scalar loglik = Scalar(0);

    bool converged = false;
    /// MeanMLE hit its iteration cap before the likelihood settled.
    bool max_iterations_reached = false;
    /// Outer (mean) iterations; 1 for SampleMean.
    int iterations = 0;
    /// Likelihood evaluations across all optimizer calls.
    long long evaluations = 0;
    /// Flops charged to a single likelihood evaluation; depends on the
    /// orders only, never on n.
    long long flops_per_eval = 0;
    /// l_0, l_1, ... for MeanMLE.
    std::vector<Scalar> loglik_history;

    /// AR approximation order (0 for pure AR fits).
    Index r = 0;
    std::optional<Scalar> kl_diagnostic;
    bool approximation_degraded = false;
};

}  // namespace fastarma
