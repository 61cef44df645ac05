#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lcqp/errors.hpp"

namespace lcqp
{

enum class Backend
{
    F64,
    LogDomain,
    Phased
};

std::string_view to_string(Backend backend);
Backend parse_backend(std::string_view text);

// Nonnegative magnitude stored as its natural logarithm. Zero is -inf.
//
// Sums use the stable log-sum-exp identity, products add logs, so products
// of e^{-tau C} factors never overflow or underflow.
struct LogWeight
{
    double log = -std::numeric_limits<double>::infinity();

    LogWeight() = default;

    // From a plain nonnegative value. Eigen builds Scalar(0) and Scalar(1)
    // through this constructor.
    LogWeight(double value)
        : log(value > 0.0    ? std::log(value)
              : value == 0.0 ? -std::numeric_limits<double>::infinity()
                             : throw std::domain_error("LogWeight of a negative value"))
    {
    }

    static LogWeight from_log(double l)
    {
        LogWeight w;
        w.log = l;
        return w;
    }

    bool is_zero() const { return log == -std::numeric_limits<double>::infinity(); }
    double value() const { return std::exp(log); }

    friend LogWeight operator+(LogWeight a, LogWeight b)
    {
        if (a.log < b.log)
            std::swap(a, b);
        if (b.is_zero())
            return a;
        return from_log(a.log + std::log1p(std::exp(b.log - a.log)));
    }
    friend LogWeight operator*(LogWeight a, LogWeight b)
    {
        if (a.is_zero() || b.is_zero())
            return LogWeight{};
        return from_log(a.log + b.log);
    }
    LogWeight& operator+=(LogWeight b) { return *this = *this + b; }
    LogWeight& operator*=(LogWeight b) { return *this = *this * b; }

    friend bool operator==(LogWeight a, LogWeight b) { return a.log == b.log; }
    friend bool operator<(LogWeight a, LogWeight b) { return a.log < b.log; }
};

} // namespace lcqp

namespace Eigen
{
template <>
struct NumTraits<lcqp::LogWeight> : GenericNumTraits<double>
{
    typedef lcqp::LogWeight Real;
    typedef lcqp::LogWeight NonInteger;
    typedef lcqp::LogWeight Nested;
    typedef lcqp::LogWeight Literal;
    enum
    {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 8,
        MulCost = 1
    };
};
} // namespace Eigen

namespace lcqp
{

using Phased = std::complex<double>;

template <class W>
using WeightVector = Eigen::Matrix<W, Eigen::Dynamic, 1>;
template <class W>
using WeightMatrix = Eigen::Matrix<W, Eigen::Dynamic, Eigen::Dynamic>;

// Per-scalar policy. key() is strictly monotone in the represented magnitude
// and is what every argmax compares.
template <class W>
struct WeightOps;

template <>
struct WeightOps<double>
{
    static constexpr Backend backend = Backend::F64;
    static double from_cost(double tau, double cost) { return std::exp(-tau * cost); }
    static double key(double w) { return w; }
    static double log_magnitude(double w) { return std::log(w); }
    static bool valid(double w) { return std::isfinite(w) && w >= 0.0; }
    static double scale(double w, double log_factor) { return w * std::exp(log_factor); }
    static double with_phase(double w, double) { return w; }
};

template <>
struct WeightOps<LogWeight>
{
    static constexpr Backend backend = Backend::LogDomain;
    static LogWeight from_cost(double tau, double cost) { return LogWeight::from_log(-tau * cost); }
    static double key(LogWeight w) { return w.log; }
    static double log_magnitude(LogWeight w) { return w.log; }
    static bool valid(LogWeight w) { return !std::isnan(w.log) && w.log != std::numeric_limits<double>::infinity(); }
    static LogWeight scale(LogWeight w, double log_factor)
    {
        return w.is_zero() ? w : LogWeight::from_log(w.log + log_factor);
    }
    static LogWeight with_phase(LogWeight w, double) { return w; }
};

template <>
struct WeightOps<Phased>
{
    static constexpr Backend backend = Backend::Phased;
    static Phased from_cost(double tau, double cost) { return {std::exp(-tau * cost), 0.0}; }
    static double key(const Phased& w) { return std::abs(w); }
    static double log_magnitude(const Phased& w) { return std::log(std::abs(w)); }
    static bool valid(const Phased& w) { return std::isfinite(w.real()) && std::isfinite(w.imag()); }
    static Phased scale(const Phased& w, double log_factor) { return w * std::exp(log_factor); }
    static Phased with_phase(const Phased& w, double angle) { return w * std::polar(1.0, angle); }
};

// e^{-tau * cost} in the representation of W.
template <class W>
W from_cost(double tau, double cost)
{
    return WeightOps<W>::from_cost(tau, cost);
}

// Index of the largest magnitude; exact ties go to the lowest index.
template <class W>
int argmax(const WeightVector<W>& v)
{
    if (v.size() == 0)
        throw std::invalid_argument("argmax of an empty vector");
    int best = 0;
    double best_key = WeightOps<W>::key(v[0]);
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const double k = WeightOps<W>::key(v[i]);
        if (k > best_key) {
            best_key = k;
            best = static_cast<int>(i);
        }
    }
    return best;
}

template <class W>
std::vector<double> magnitude_keys(const WeightVector<W>& v)
{
    std::vector<double> out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out[i] = WeightOps<W>::key(v[i]);
    return out;
}

template <class W>
std::vector<double> log_magnitudes(const WeightVector<W>& v)
{
    std::vector<double> out(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out[i] = WeightOps<W>::log_magnitude(v[i]);
    return out;
}

// Natural log of the 1-norm of the magnitudes.
template <class W>
double log_norm1(const WeightVector<W>& v)
{
    if constexpr (std::is_same_v<W, LogWeight>) {
        LogWeight s;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            s += v[i];
        return s.log;
    } else {
        double s = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            s += WeightOps<W>::key(v[i]);
        return std::log(s);
    }
}

template <class W>
void check_range(const WeightVector<W>& v, const char* where)
{
    bool any_nonzero = false;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!WeightOps<W>::valid(v[i]))
            throw NumericRangeError(std::string(where) +
                                    ": non-finite weight (tau too large for this backend; "
                                    "use --backend logdomain)");
        if (WeightOps<W>::key(v[i]) > (std::is_same_v<W, LogWeight> ? -HUGE_VAL : 0.0))
            any_nonzero = true;
    }
    if (!any_nonzero)
        throw NumericRangeError(std::string(where) +
                                ": every weight underflowed to zero (tau too large for this "
                                "backend; use --backend logdomain)");
}

struct NormalizationStep
{
    double log_factor = 0.0;
    double factor() const { return std::exp(log_factor); }
};

// Rescales v so the 1-norm of its magnitudes equals target (default: its
// length). The argmax is unchanged.
template <class W>
NormalizationStep normalize_inplace(WeightVector<W>& v, double target = -1.0)
{
    if (target <= 0.0)
        target = static_cast<double>(v.size());
    const double ln = log_norm1<W>(v);
    if (std::isnan(ln) || ln == HUGE_VAL)
        throw NumericRangeError("normalization: 1-norm overflowed (use --backend logdomain)");
    if (ln == -HUGE_VAL)
        throw NumericRangeError("normalization: all-zero vector, weights underflowed "
                                "(use --backend logdomain)");
    NormalizationStep step{std::log(target) - ln};
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v[i] = WeightOps<W>::scale(v[i], step.log_factor);
    return step;
}

// Signed quantity kept as sign and log of the absolute value, so sign-vector
// contractions stay meaningful in the log-domain backend.
struct SignedMagnitude
{
    int sign = 0;
    double log_abs = -HUGE_VAL;
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// sum_i signs[i] * |v_i|
template <class W>
SignedMagnitude signed_sum(const WeightVector<W>& v, const Eigen::VectorXd& signs)
{
    if constexpr (std::is_same_v<W, double>) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            s += signs[i] * v[i];
        return {s > 0 ? 1 : (s < 0 ? -1 : 0), std::log(std::abs(s))};
    } else {
        LogWeight pos, neg;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const auto m = LogWeight::from_log(WeightOps<W>::log_magnitude(v[i]));
            if (signs[i] > 0)
                pos += m;
            else if (signs[i] < 0)
                neg += m;
        }
        if (pos.log == neg.log)
            return {};
        if (pos.log > neg.log)
            return {1, pos.log + std::log1p(-std::exp(neg.log - pos.log))};
        return {-1, neg.log + std::log1p(-std::exp(pos.log - neg.log))};
    }
}

} // namespace lcqp
