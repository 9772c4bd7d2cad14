#pragma once

#include "katz/formal_type.hpp"

#include <vector>

namespace katz::testing {

using Matrix = std::vector<std::vector<Rational>>;

inline long rank_of(Matrix m) {
    long r = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
        std::size_t p = static_cast<std::size_t>(r);
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[static_cast<std::size_t>(r)]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == static_cast<std::size_t>(r) || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[static_cast<std::size_t>(r)][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[static_cast<std::size_t>(r)][j];
        }
        ++r;
    }
    return r;
}

/// Residue matrix of a regular type with rational residues, each reduced to [0, 1).
inline Matrix residue_matrix(const FormalType& v) {
    std::vector<std::pair<Rational, unsigned long>> jordan;
    for (const auto& b : v.blocks())
        for (unsigned long k = 0; k < b.mult; ++k) {
            Rational r = b.residue.constant();
            jordan.emplace_back(r - floor(r), b.unipotent);
        }
    std::size_t n = 0;
    for (const auto& [r, u] : jordan) n += u;
    Matrix a(n, std::vector<Rational>(n, Rational(0)));
    std::size_t at = 0;
    for (const auto& [r, u] : jordan) {
        for (std::size_t i = 0; i < u; ++i) {
            a[at + i][at + i] = r;
            if (i + 1 < u) a[at + i][at + i + 1] = 1;
        }
        at += u;
    }
    return a;
}

/// dim { X : X A = B X } for the residue matrices of regular V (A) and W (B):
/// the flat sections of HOM(V, W).
inline long commutant_dimension(const FormalType& v, const FormalType& w) {
    Matrix a = residue_matrix(v), b = residue_matrix(w);
    const std::size_t n = a.size(), m = b.size();
    // unknown X is m x n, entry (i, j) -> i * n + j
    Matrix eq;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rational> row(m * n, Rational(0));
            for (std::size_t k = 0; k < n; ++k) row[i * n + k] += a[k][j];
            for (std::size_t k = 0; k < m; ++k) row[k * n + j] -= b[i][k];
            eq.push_back(std::move(row));
        }
    return static_cast<long>(m * n) - rank_of(eq);
}

}  // namespace katz::testing
