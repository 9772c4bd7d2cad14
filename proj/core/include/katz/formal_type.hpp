#pragma once

#include "katz/puiseux.hpp"
#include "katz/scalar.hpp"

#include <compare>
#include <string>
#include <vector>

namespace katz {

/// One Levelt-Turrittin summand: the degree-r induction of the rank-one
/// object e^f z^(-residue) over k((z^(1/r))), tensored with a unipotent
/// Jordan block of size u, repeated m times.
///
/// The residue is measured in z-units. For r > 1 it matters modulo 1/r
/// only; normalization to [0, 1/r) happens at datum level.
struct Block {
    unsigned long ram = 1;
    PhasePart phase;
    Scalar residue;
    unsigned long unipotent = 1;
    unsigned long mult = 1;

    /// Validates primitivity (ram == phase.ram()) and replaces the phase by
    /// its orbit representative.
    static Block make(unsigned long ram, PhasePart phase, Scalar residue, unsigned long unipotent = 1,
                      unsigned long mult = 1);
    static Block regular(Scalar residue, unsigned long unipotent = 1, unsigned long mult = 1);

    unsigned long rank() const { return ram * unipotent * mult; }
    Rational slope() const { return phase.slope(); }
    Rational irreg() const { return slope() * static_cast<long>(rank()); }
    /// Zero phase and integer residue: the block is a sum of copies of the
    /// trivial connection tensored with J(0, u).
    bool is_horizontal_type() const { return phase.is_zero() && residue.is_integer(); }
    bool is_trivial() const { return is_horizontal_type() && unipotent == 1; }

    /// Same block with residue shifted into [0, 1/ram).
    Block normalized() const;

    friend bool operator==(const Block&, const Block&) = default;
    /// (ram, slope, phase, residue, unipotent, mult)
    friend std::strong_ordering operator<=>(const Block& a, const Block& b);

    std::string to_string() const;
};

/// The `blocks` of a rank-one object over the degree-`degree` extension
/// with phase `phase` (whose own ramification divides degree), induced
/// down to k((z)): degree/ram(phase) blocks with residues
/// residue + j/degree.
std::vector<Block> induced_blocks(unsigned long degree, const PhasePart& phase, const Scalar& residue,
                                  unsigned long unipotent, unsigned long mult);

struct LocalInvariants {
    long rank = 0;
    Rational irreg;
    std::vector<Rational> slopes;  // one entry per rank unit, ascending
    long hor = 0;
    long delta = 0;
};

/// Multiset of blocks in canonical form: orbit-representative phases,
/// sorted, exact duplicates merged into multiplicities.
class FormalType {
  public:
    FormalType() = default;
    explicit FormalType(std::vector<Block> blocks);

    static FormalType trivial(unsigned long rank);

    const std::vector<Block>& blocks() const { return blocks_; }
    long rank() const;
    Rational irreg() const;
    long hor() const;
    long delta() const;
    /// Throws NonIntegralIrregularity when the irregularity is fractional.
    LocalInvariants invariants() const;

    bool is_trivial() const;
    /// Residues reduced into [0, 1/ram) and re-merged.
    FormalType normalized() const;

    /// Blocks with slope > 1, slope == 1, slope < 1.
    FormalType part_above_one() const;

    friend bool operator==(const FormalType&, const FormalType&) = default;
    std::string to_string() const;

  private:
    std::vector<Block> blocks_;
};

FormalType direct_sum(const FormalType& a, const FormalType& b);

/// HOM(V, W) = W (x) V^dual.
FormalType hom(const FormalType& v, const FormalType& w);
FormalType dual(const FormalType& v);
/// Tensor with the rank-one block ell (ram 1, u 1, m 1).
FormalType tensor_rank_one(const FormalType& v, const Block& ell);

/// A u = 1 constituent (ram, phase orbit, residue).
struct Component {
    unsigned long ram = 1;
    PhasePart phase;
    Scalar residue;

    Block block() const { return Block::make(ram, phase, residue); }
    long rank() const { return static_cast<long>(ram); }

    friend bool operator==(const Component&, const Component&) = default;
    friend std::strong_ordering operator<=>(const Component& a, const Component& b);
    std::string to_string() const;
};

std::vector<Component> components(const FormalType& v);

/// delta(HOM(C, V)) / rank(C).
Rational component_score(const Component& c, const FormalType& v);

/// All components minimizing component_score, in canonical order.
std::vector<Component> min_delta_components(const FormalType& v);

/// Rank-one block carrying the integer-exponent part of the phase, residue 0.
Block best_rank_one_approx(const Component& c);

}  // namespace katz
