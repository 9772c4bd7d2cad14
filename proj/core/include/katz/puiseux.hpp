#pragma once

#include "katz/scalar.hpp"
#include "katz/series.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace katz {

/// Exponent -> coefficient, exponents rational. Used for general Puiseux
/// expansions (both signs of exponent).
using PuiseuxTerms = std::map<Rational, Scalar>;

/// Principal part f of an exponential factor e^f: a finite Puiseux sum in the
/// local coordinate z with strictly negative exponents and nonzero
/// coefficients. The ramification is derived as the least common
/// denominator of the exponents, so it is always minimal.
class PhasePart {
  public:
    PhasePart() = default;
    /// Drops zero coefficients; throws InvalidArgument on exponents >= 0.
    explicit PhasePart(PuiseuxTerms terms);

    static PhasePart monomial(const Rational& exponent, const Scalar& coeff);

    const PuiseuxTerms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned long ram() const { return ram_; }

    /// Minimal exponent; nullopt stands for +infinity (zero phase).
    std::optional<Rational> ord() const;
    /// max(-ord, 0).
    Rational slope() const;
    /// Pole order in the ramified variable t = z^(1/ram).
    long pole_order() const;

    /// Image under t -> zeta_ram^j t: c z^q -> zeta_ram^(j q ram) c z^q.
    PhasePart conjugate(long j) const;
    /// The ram phases f(zeta^j t), j = 0..ram-1.
    std::vector<PhasePart> conjugates() const;
    /// Smallest member of the Galois orbit; orbit identity == representative identity.
    PhasePart orbit_representative() const;

    /// Sub-sum of integer-exponent terms (Galois invariant part).
    PhasePart integer_part() const;
    /// Coefficient of z^e (zero if absent).
    Scalar coefficient(const Rational& e) const;

    PhasePart operator-() const;
    friend PhasePart operator+(const PhasePart& a, const PhasePart& b);
    friend PhasePart operator-(const PhasePart& a, const PhasePart& b);

    friend bool operator==(const PhasePart& a, const PhasePart& b) { return a.terms_ == b.terms_; }
    friend std::strong_ordering operator<=>(const PhasePart& a, const PhasePart& b);

    std::string to_string() const;

  private:
    PuiseuxTerms terms_;
    unsigned long ram_ = 1;
};

/// Invertible local coordinate change z = e_1 u + e_2 u^2 + ...
/// `exact` marks a polynomial change (no truncation); otherwise the
/// coefficients are known only through u^coeffs.size().
struct CoordinateChange {
    std::vector<Scalar> coeffs;
    bool exact = false;

    static CoordinateChange scaling(const Scalar& c) { return {{c}, true}; }
    /// Local coordinate at a point exchanged with infinity by w = 1/z: the
    /// new local coordinate equals the old one.
    static CoordinateChange chart_swap() { return scaling(Scalar(1L)); }
};

struct Substitution {
    PhasePart principal;
    /// Constant term of the substituted phase; gauge-trivial, reported only.
    Scalar constant;
};

Substitution substitute(const PhasePart& f, const CoordinateChange& change);

/// Solution t(s) = lead * s * unit(s) of h(t) = s^K, where h is a finite
/// Laurent polynomial in t with leading term a t^K, K != 0.
struct DominantInverse {
    long order = 0;
    Scalar lead;
    PowerSeries unit{0};
};

/// Solves h(t(s)) = s^K through s^(K + precision - 1) and checks the
/// result by back-substitution (throws InternalInconsistency on failure).
DominantInverse invert_dominant(const LaurentPoly& h, std::size_t precision);

/// Compositional inverse of a Puiseux sum g with single dominant term
/// a u^(-k), k > 0: returns u(w) with g(u(w)) = w, keeping the terms of
/// u with exponent >= target_order. The branch of w^(1/k) is the formal
/// root fixed by Scalar::root.
PuiseuxTerms formal_inverse(const PuiseuxTerms& g, const Rational& target_order);

std::string to_string(const PuiseuxTerms& terms);

}  // namespace katz
