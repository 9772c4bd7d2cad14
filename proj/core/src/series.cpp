#include "katz/series.hpp"

#include "katz/error.hpp"

#include <algorithm>

namespace katz {

PowerSeries::PowerSeries(std::size_t precision) : coeffs_(precision) {}

PowerSeries::PowerSeries(std::vector<Scalar> coeffs, std::size_t precision) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(precision);
}

PowerSeries PowerSeries::one(std::size_t precision) {
    PowerSeries s(precision);
    if (precision > 0) s[0] = Scalar(1L);
    return s;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.precision(), b.precision()));
    for (std::size_t i = 0; i < r.precision(); ++i) r[i] = a[i] + b[i];
    return r;
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries r(std::min(a.precision(), b.precision()));
    for (std::size_t i = 0; i < r.precision(); ++i) r[i] = a[i] - b[i];
    return r;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::min(a.precision(), b.precision());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

PowerSeries PowerSeries::scaled(const Scalar& s) const {
    PowerSeries r(precision());
    for (std::size_t i = 0; i < precision(); ++i) r[i] = coeffs_[i] * s;
    return r;
}

// p = a^alpha satisfies p' a = alpha p a', giving
// n p_n = sum_{j=1..n} (alpha j - (n - j)) a_j p_{n-j}.
PowerSeries PowerSeries::pow_unit(const Rational& alpha) const {
    const std::size_t n = precision();
    if (n == 0) return *this;
    if (coeffs_[0] != Scalar(1L)) fail(ErrorCode::InvalidArgument, "pow_unit needs constant term 1");
    PowerSeries p(n);
    p[0] = Scalar(1L);
    for (std::size_t k = 1; k < n; ++k) {
        Scalar acc;
        for (std::size_t j = 1; j <= k; ++j) {
            if (coeffs_[j].is_zero()) continue;
            Rational w = alpha * static_cast<long>(j) - static_cast<long>(k - j);
            if (w == 0) continue;
            acc += Scalar(w) * coeffs_[j] * p[k - j];
        }
        p[k] = acc * Scalar(frac(1, static_cast<long>(k)));
    }
    return p;
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
    if (inner.precision() > 0 && !inner[0].is_zero())
        fail(ErrorCode::InvalidArgument, "compose needs an inner series without constant term");
    const std::size_t n = std::min(precision(), inner.precision());
    PowerSeries result(n);
    for (std::size_t i = precision(); i-- > 0;) {
        result = result * inner;
        result[0] += coeffs_[i];
    }
    return result;
}

}  // namespace katz
