#pragma once

#include "katz/datum.hpp"

namespace katz {

/// irreg(HOM(V, W)) summed over all pairs of conjugate lines, each line
/// weighted by its Jordan size and multiplicity. Independent of the block
/// calculus in hom().
Rational oracle_irreg_hom(const FormalType& v, const FormalType& w);
/// dim of formal flat sections of HOM(V, W), counted as commutant
/// dimensions min(u, u') between isomorphic induced characters.
long oracle_hor_hom(const FormalType& v, const FormalType& w);
long oracle_delta_hom(const FormalType& v, const FormalType& w);

/// Recomputes irreg(V_x), irreg and delta of END(V_x) per point and the
/// rigidity index through the oracle; throws OracleMismatch on disagreement.
void check_with_oracle(const FormalTypeDatum& d);

}  // namespace katz
