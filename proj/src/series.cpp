#include "grs/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace grs {

TruncSeries::TruncSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        coeffs_.push_back(0.0);
    }
}

TruncSeries::TruncSeries(std::initializer_list<double> coeffs, std::size_t order)
    : coeffs_(order + 1, 0.0) {
    std::size_t n = 0;
    for (double c : coeffs) {
        if (n > order) {
            break;
        }
        coeffs_[n++] = c;
    }
}

TruncSeries TruncSeries::constant(double c, std::size_t order) {
    TruncSeries s(order);
    s[0] = c;
    return s;
}

TruncSeries TruncSeries::identity(std::size_t order) {
    TruncSeries s(order);
    if (order >= 1) {
        s[1] = 1.0;
    }
    return s;
}

TruncSeries TruncSeries::truncated(std::size_t order) const {
    std::vector<double> c(order + 1, 0.0);
    std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), c.size()), c.begin());
    return TruncSeries(std::move(c));
}

bool TruncSeries::is_even() const {
    for (std::size_t n = 1; n < coeffs_.size(); n += 2) {
        if (coeffs_[n] != 0.0) {
            return false;
        }
    }
    return true;
}

bool TruncSeries::is_odd() const {
    for (std::size_t n = 0; n < coeffs_.size(); n += 2) {
        if (coeffs_[n] != 0.0) {
            return false;
        }
    }
    return true;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& rhs) {
    *this = add(*this, rhs);
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& rhs) {
    *this = sub(*this, rhs);
    return *this;
}

TruncSeries& TruncSeries::operator*=(double s) {
    for (double& c : coeffs_) {
        c *= s;
    }
    return *this;
}

TruncSeries add(const TruncSeries& a, const TruncSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
        out[i] = a[i] + b[i];
    }
    return out;
}

TruncSeries sub(const TruncSeries& a, const TruncSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncSeries out(n);
    for (std::size_t i = 0; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            acc += a[j] * b[i - j];
        }
        out[i] = acc;
    }
    return out;
}

TruncSeries scale(const TruncSeries& a, double s) {
    TruncSeries out = a;
    out *= s;
    return out;
}

TruncSeries reciprocal(const TruncSeries& a, double zero_threshold) {
    if (!(std::abs(a[0]) > zero_threshold)) {
        throw ZeroConstantTerm("reciprocal: constant coefficient " + std::to_string(a[0]) +
                               " is below threshold");
    }
    const std::size_t n = a.order();
    TruncSeries out(n);
    const double inv0 = 1.0 / a[0];
    out[0] = inv0;
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= i; ++j) {
            acc += a[j] * out[i - j];
        }
        out[i] = -acc * inv0;
    }
    return out;
}

TruncSeries exp_series(const TruncSeries& a) {
    if (a[0] != 0.0) {
        throw NonzeroConstantTerm("exp_series: argument must vanish at t = 0");
    }
    // E' = a' E, coefficientwise: n E_n = sum_{k=1}^{n} k a_k E_{n-k}.
    const std::size_t n = a.order();
    TruncSeries out(n);
    out[0] = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= i; ++k) {
            acc += static_cast<double>(k) * a[k] * out[i - k];
        }
        out[i] = acc / static_cast<double>(i);
    }
    return out;
}

TruncSeries differentiate(const TruncSeries& a) {
    const std::size_t n = a.order();
    if (n == 0) {
        return TruncSeries(0);
    }
    TruncSeries out(n - 1);
    for (std::size_t i = 1; i <= n; ++i) {
        out[i - 1] = static_cast<double>(i) * a[i];
    }
    return out;
}

TruncSeries shift_up(const TruncSeries& a, std::size_t k) {
    TruncSeries out(a.order() + k);
    for (std::size_t i = 0; i <= a.order(); ++i) {
        out[i + k] = a[i];
    }
    return out;
}

double eval_horner(const TruncSeries& a, double t) {
    const auto& c = a.coeffs();
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

}  // namespace grs
