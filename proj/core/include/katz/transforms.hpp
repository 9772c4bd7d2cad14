#pragma once

#include "katz/datum.hpp"

#include <string>
#include <variant>
#include <vector>

namespace katz {

/// z -> (a z + b) / (c z + d) over the rationals.
struct MoebiusMap {
    Rational a = 1, b = 0, c = 0, d = 1;

    static MoebiusMap make(Rational a, Rational b, Rational c, Rational d);
    static MoebiusMap identity() { return {}; }
    static MoebiusMap translation(const Rational& x) { return make(1, x, 0, 1); }
    static MoebiusMap negation() { return make(-1, 0, 0, 1); }
    static MoebiusMap inversion() { return make(0, 1, 1, 0); }

    Rational det() const { return a * d - b * c; }
    PointP1 apply(const PointP1& p) const;
    MoebiusMap inverse() const;
    /// (this o other)(z) = this(other(z))
    MoebiusMap compose(const MoebiusMap& other) const;
    bool is_identity() const;

    friend bool operator==(const MoebiusMap&, const MoebiusMap&) = default;
    std::string to_string() const;
};

/// Local coordinate of phi(y) written as a series in the local coordinate
/// at y, through u^terms.
CoordinateChange local_change(const MoebiusMap& phi, const PointP1& y, std::size_t terms);

/// Pullback phi^* D: the entry at x moves to phi^{-1}(x).
FormalTypeDatum moebius(const FormalTypeDatum& d, const MoebiusMap& phi);

/// Pointwise tensor with a rank-one datum.
FormalTypeDatum twist(const FormalTypeDatum& d, const FormalTypeDatum& ell);
FormalTypeDatum dual(const FormalTypeDatum& d);
/// K^lambda: residue lambda at 0, -lambda at infinity.
FormalTypeDatum kummer(const Scalar& lambda);
/// Rank-one datum from one rank-one block per point.
FormalTypeDatum rank_one_datum(const std::map<PointP1, Block>& blocks);

/// Local Fourier transform from a finite point x to infinity of the dual line.
std::vector<Block> local_fourier_finite(const Rational& x, const Block& b);
/// Local Fourier transform of a slope > 1 block at infinity.
std::vector<Block> local_fourier_infty(const Block& b);

/// Quotient part of the formal type at a finite dual point, produced by the
/// slope <= 1 blocks of V_infinity whose linear term is -y.
struct FinitePart {
    Rational point;
    std::vector<Block> blocks;
    /// Each unipotent (phase 0, integer residue) quotient block J(0, k)
    /// shows up in the formal type as J(0, k + 1).
    long extra_rank = 0;
};
std::vector<FinitePart> local_fourier_to_finite(const FormalType& v_inf);

/// sum_x finite delta(V_x) + irreg(V_inf^{>1}) - rank(V_inf^{>1})
long fourier_rank(const FormalTypeDatum& d);
/// sum_x finite delta(V_x) + delta(V_inf (x) K^{-lambda}_inf) - rank
long middle_convolution_rank(const FormalTypeDatum& d, const Scalar& lambda);

struct Skyscraper {};
struct Undefined {
    PointP1 point;
    long deficit = 0;
    std::string to_string() const;
};
using TransformResult = std::variant<FormalTypeDatum, Skyscraper, Undefined>;

TransformResult fourier(const FormalTypeDatum& d);
/// (-1)^* o fourier
TransformResult inverse_fourier(const FormalTypeDatum& d);
TransformResult middle_convolution(const FormalTypeDatum& d, const Scalar& lambda);

/// Rank one and either trivial or with exactly two regular singular points.
bool is_excluded_trivial_shape(const FormalTypeDatum& d);

}  // namespace katz
