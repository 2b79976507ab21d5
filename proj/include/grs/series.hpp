#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace grs {

/// Raised by reciprocal() when the constant coefficient is (numerically) zero.
class ZeroConstantTerm : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by exp_series() when the argument has a nonzero constant coefficient.
class NonzeroConstantTerm : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Dense truncated power series c_0 + c_1 t + ... + c_N t^N.
///
/// Coefficients are stored plainly (the coefficient of t^n is c_n, not
/// c_n / n!). The truncation degree N is inclusive, so a series always
/// holds N + 1 coefficients. Binary operations truncate to the smaller
/// of the two operand orders.
class TruncSeries {
public:
    explicit TruncSeries(std::size_t order = 0) : coeffs_(order + 1, 0.0) {}
    explicit TruncSeries(std::vector<double> coeffs);
    TruncSeries(std::initializer_list<double> coeffs, std::size_t order);

    static TruncSeries constant(double c, std::size_t order);
    /// The series "t" at the given order (order >= 1).
    static TruncSeries identity(std::size_t order);

    std::size_t order() const { return coeffs_.size() - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double operator[](std::size_t n) const { return coeffs_[n]; }
    double& operator[](std::size_t n) { return coeffs_[n]; }

    /// Coefficient of t^n, or 0 past the truncation degree.
    double coeff(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : 0.0; }

    /// Same coefficients at a different truncation degree (drops or zero-pads).
    TruncSeries truncated(std::size_t order) const;

    bool is_even() const;
    bool is_odd() const;

    TruncSeries& operator+=(const TruncSeries& rhs);
    TruncSeries& operator-=(const TruncSeries& rhs);
    TruncSeries& operator*=(double s);

private:
    std::vector<double> coeffs_;
};

TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries scale(const TruncSeries& a, double s);

/// 1/a. Throws ZeroConstantTerm when |c_0| <= zero_threshold.
TruncSeries reciprocal(const TruncSeries& a, double zero_threshold = 1e-14);

/// exp(a) for a with a(0) == 0; throws NonzeroConstantTerm otherwise.
TruncSeries exp_series(const TruncSeries& a);

/// Termwise derivative; the result has order N - 1 (order 0 stays 0).
TruncSeries differentiate(const TruncSeries& a);

/// t^k * a, with the order raised by k so no information is lost.
TruncSeries shift_up(const TruncSeries& a, std::size_t k);

double eval_horner(const TruncSeries& a, double t);

inline TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) { return add(a, b); }
inline TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return sub(a, b); }
inline TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul(a, b); }
inline TruncSeries operator*(double s, const TruncSeries& a) { return scale(a, s); }
inline TruncSeries operator*(const TruncSeries& a, double s) { return scale(a, s); }

}  // namespace grs
