#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace katz {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p" or "p/q" (optional leading '-'); throws ParseError on anything else.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
Rational floor(const Rational& q);
/// num/den in lowest terms (mpq_class(num, den) does not reduce).
Rational frac(long num, long den);
Integer lcm(const Integer& a, const Integer& b);

unsigned long euler_phi(unsigned long n);

/// Largest conductor any operation may promote to. Read once from
/// KATZ_MAX_CONDUCTOR, default 1024.
unsigned long max_conductor();

/// Element of the cyclotomic field Q(zeta_N), stored as coordinates in the
/// power basis 1, zeta, ..., zeta^(phi(N)-1) reduced modulo the N-th
/// cyclotomic polynomial.
///
/// Arithmetic promotes to the least common conductor and then shrinks the
/// result to the smallest conductor whose field contains it, so two equal
/// values produced by arithmetic have identical representations. `embed`
/// is the one way to obtain a non-minimal representation; equality still
/// compares by value in that case.
class Scalar {
  public:
    Scalar();
    Scalar(long value);  // NOLINT(google-explicit-constructor)
    Scalar(const Rational& value);  // NOLINT(google-explicit-constructor)

    /// zeta_n^k with zeta_n = exp(2 pi i / n).
    static Scalar root_of_unity(unsigned long n, long k = 1);
    static Scalar from_coords(unsigned long conductor, std::vector<Rational> coords);

    unsigned long conductor() const { return conductor_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;
    bool is_integer() const;
    /// Constant coordinate; the exact value when is_rational().
    const Rational& constant() const { return coords_.front(); }

    Scalar embed(unsigned long conductor) const;
    /// Same value at the smallest possible conductor.
    Scalar minimal() const;

    Scalar operator-() const;
    Scalar inverse() const;
    Scalar pow(long exponent) const;

    /// Some k-th root inside a cyclotomic field, if one is reachable: roots
    /// of unity times rationals whose k-th or square root is rational or a
    /// quadratic surd. The branch for a positive rational is the positive
    /// real root.
    std::optional<Scalar> nth_root(unsigned long k) const;
    /// nth_root or throws OutsideCoefficientField.
    Scalar root(unsigned long k) const;

    /// Shift by an integer so the constant coordinate lies in [0, 1/modulus).
    Scalar reduced_mod(const Rational& modulus) const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    /// Total order on values: (minimal conductor, coordinates lexicographically).
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    /// Human readable: "3/2", "-1/2 + z12^3" style.
    std::string to_string() const;

  private:
    Scalar(unsigned long conductor, std::vector<Rational> coords, bool shrink);

    unsigned long conductor_ = 1;
    std::vector<Rational> coords_;
};

/// Class of a scalar modulo integer shifts.
class ResidueClass {
  public:
    explicit ResidueClass(Scalar value) : value_(std::move(value)) {}
    const Scalar& value() const { return value_; }
    /// Canonical representative with constant coordinate in [0, 1).
    Scalar representative() const { return value_.reduced_mod(1); }
    bool is_zero() const { return value_.is_integer(); }

    friend bool operator==(const ResidueClass& a, const ResidueClass& b) {
        return (a.value_ - b.value_).is_integer();
    }

  private:
    Scalar value_;
};

}  // namespace katz
