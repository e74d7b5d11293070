#pragma once

/** \file
 *  \brief Dense monomial layout and precomputed convolution plan for truncated
 *         multivariate Taylor coefficients.
 *
 *  Monomials of total degree <= degree in num_vars variables are ranked in
 *  graded lexicographic order (total degree major, then lexicographic on the
 *  exponent tuple). Ranks of monomials with total degree <= d are identical
 *  across layouts that differ only in the degree cap, which is what makes
 *  truncation bit-reproducible: a product computed at degree 4 and then
 *  truncated to degree 3 matches the degree-3 product coefficient for
 *  coefficient, bit for bit.
 */

#include <array>
#include <cstdint>
#include <vector>

namespace wsm::jets {

inline constexpr int max_vars = 6;
inline constexpr int max_degree = 4;

/// Exponent tuple, unused slots zero.
using mono = std::array<std::uint8_t, max_vars>;

struct layout {
    int num_vars = 0;
    int degree = 0;
    std::vector<mono> monos;          ///< rank -> exponents, graded lex ascending
    std::vector<std::int16_t> rank;   ///< base-(degree+1) packed exponents -> rank, -1 if absent

    /// Convolution plan: for output rank r, the ordered list of factor rank
    /// pairs (pa[i], qa[i]) with i in [seg[r], seg[r+1]). Pair order is fixed
    /// (ascending first factor, then ascending second factor) so every kernel
    /// accumulates in the same sequence.
    std::vector<std::int32_t> pa, qa;
    std::vector<std::int32_t> seg;

    int size() const noexcept { return static_cast<int>(monos.size()); }
    int rank_of(const mono& m) const noexcept;

    /// Singleton per (num_vars, degree); throws shape error outside limits.
    static const layout& get(int num_vars, int degree);
};

/// Number of monomials of total degree <= degree in num_vars variables.
int layout_size(int num_vars, int degree);

} // namespace wsm::jets
