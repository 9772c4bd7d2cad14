#pragma once

#include "katz/scalar.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace katz {

/// Power series c_0 + c_1 x + ... known modulo x^precision.
class PowerSeries {
  public:
    explicit PowerSeries(std::size_t precision);
    PowerSeries(std::vector<Scalar> coeffs, std::size_t precision);

    static PowerSeries one(std::size_t precision);

    std::size_t precision() const { return coeffs_.size(); }
    const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }
    Scalar& operator[](std::size_t i) { return coeffs_[i]; }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    PowerSeries scaled(const Scalar& s) const;

    /// (this)^alpha for a series with constant term 1.
    PowerSeries pow_unit(const Rational& alpha) const;
    /// this(inner(x)); inner must have zero constant term.
    PowerSeries compose(const PowerSeries& inner) const;

  private:
    std::vector<Scalar> coeffs_;
};

/// Finite Laurent polynomial in one variable with integer exponents.
using LaurentPoly = std::map<long, Scalar>;

}  // namespace katz
