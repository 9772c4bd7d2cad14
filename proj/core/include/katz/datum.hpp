#pragma once

#include "katz/formal_type.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace katz {

/// Rational point of the affine z-chart, or infinity.
class PointP1 {
  public:
    PointP1() = default;  // infinity
    PointP1(Rational x) : x_(std::move(x)) {}  // NOLINT(google-explicit-constructor)
    PointP1(long x) : x_(Rational(x)) {}       // NOLINT(google-explicit-constructor)
    static PointP1 infinity() { return PointP1(); }
    /// "inf" or a fraction string.
    static PointP1 parse(const std::string& text);

    bool is_infinity() const { return !x_.has_value(); }
    const Rational& value() const { return *x_; }

    friend bool operator==(const PointP1& a, const PointP1& b) { return a.x_ == b.x_; }
    /// Finite points ascending, infinity last.
    friend std::strong_ordering operator<=>(const PointP1& a, const PointP1& b);
    std::string to_string() const;

  private:
    std::optional<Rational> x_;
};

struct Violation {
    enum class Kind { ConstantRank, TrivialEntry, Determinant };
    Kind kind;
    std::optional<PointP1> point;
    std::string message;
};
std::string to_string(Violation::Kind kind);

enum class RigClass { RigidCandidate, RigidityZero, Overdetermined, Underdetermined };
std::string to_string(RigClass c);

/// Determinant residue m*u*(r*lambda + (r-1)/2) of a block.
Scalar detres(const Block& b);
Scalar detres(const FormalType& v);

/// Formal types at finitely many points of P^1; unlisted points are trivial.
class FormalTypeDatum {
  public:
    using Entries = std::map<PointP1, FormalType>;

    FormalTypeDatum() = default;
    FormalTypeDatum(long rank, Entries entries) : rank_(rank), entries_(std::move(entries)) {}
    static FormalTypeDatum trivial(long rank) { return FormalTypeDatum(rank, {}); }

    long rank() const { return rank_; }
    const Entries& entries() const { return entries_; }
    /// Listed type or the trivial type of the datum's rank.
    FormalType at(const PointP1& x) const;

    /// Residues reduced per block, trivial entries dropped.
    FormalTypeDatum normalized() const;

    /// All violations of the datum invariants; empty means valid.
    std::vector<Violation> validate() const;
    bool is_valid() const { return validate().empty(); }

    Scalar determinant_residue() const;
    long euler_char() const;
    long rigidity_index() const;
    RigClass classify() const;
    /// 2 - rig; RigTooLarge when rig > 2.
    long moduli_dimension() const;

    /// Sum of the residues of the chosen rank-one components, modulo Z.
    ResidueClass twist_residue_gap(const std::map<PointP1, Component>& choices) const;

    /// END datum: HOM(V_x, V_x) at every listed point.
    FormalTypeDatum end() const;

    /// Least conductor holding every scalar of the datum.
    unsigned long conductor() const;

    friend bool operator==(const FormalTypeDatum&, const FormalTypeDatum&) = default;
    std::string to_string() const;

  private:
    long rank_ = 1;
    Entries entries_;
};

RigClass classify_rig(long rig);

}  // namespace katz
