#pragma once

#include "katz/datum.hpp"

namespace katz::testing {

// Counts straight from the block list, without hom() or invariants().

inline Rational block_irreg(const Block& b) {
    Rational s = b.phase.is_zero() ? Rational(0) : -b.phase.terms().begin()->first;
    return s * static_cast<long>(b.ram * b.unipotent * b.mult);
}

inline long flat_sections(const FormalType& v, const Scalar& shift = Scalar(0L)) {
    long h = 0;
    for (const auto& b : v.blocks())
        if (b.phase.is_zero() && (b.residue + shift).is_integer()) h += static_cast<long>(b.mult);
    return h;
}

inline Rational delta_of(const FormalType& v, const Scalar& shift = Scalar(0L)) {
    Rational irreg = 0;
    long rank = 0;
    for (const auto& b : v.blocks()) {
        irreg += block_irreg(b);
        rank += static_cast<long>(b.ram * b.unipotent * b.mult);
    }
    return irreg + rank - flat_sections(v, shift);
}

/// sum over finite x of delta(V_x) plus (slope - 1) * rank over the slopes > 1 at infinity.
inline Rational expected_fourier_rank(const FormalTypeDatum& d) {
    Rational r = 0;
    for (const auto& [x, v] : d.entries()) {
        if (!x.is_infinity()) {
            r += delta_of(v);
            continue;
        }
        for (const auto& b : v.blocks()) {
            Rational irreg = block_irreg(b);
            long rank = static_cast<long>(b.ram * b.unipotent * b.mult);
            if (irreg > rank) r += irreg - rank;
        }
    }
    return r;
}

/// sum over finite x of delta(V_x) + delta(V_inf twisted by residue -lambda) - rank.
inline Rational expected_mc_rank(const FormalTypeDatum& d, const Scalar& lambda) {
    Rational r = -d.rank();
    bool saw_inf = false;
    for (const auto& [x, v] : d.entries()) {
        r += x.is_infinity() ? delta_of(v, -lambda) : delta_of(v);
        saw_inf = saw_inf || x.is_infinity();
    }
    if (!saw_inf) r += delta_of(FormalType::trivial(static_cast<unsigned long>(d.rank())), -lambda);
    return r;
}

}  // namespace katz::testing
