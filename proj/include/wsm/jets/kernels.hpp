#pragma once

/** \file
 *  \brief Coefficient-array kernels behind jet arithmetic.
 *
 *  Every backend implements the same fixed summation order: per output rank,
 *  products are accumulated into four virtual lanes (lane = pair index mod 4,
 *  each lane summed in pair order) and reduced as (l0+l1)+(l2+l3). With
 *  -ffp-contract=off this makes scalar and SIMD results bit-identical, which
 *  the equivalence tests assert with operator==.
 */

#include <cstddef>

#include "wsm/jets/layout.hpp"

namespace wsm::jets::kern {

struct backend {
    const char* name;
    void (*mul)(const layout&, const double*, const double*, double*);
    void (*add)(std::size_t, const double*, const double*, double*);
    void (*sub)(std::size_t, const double*, const double*, double*);
    void (*scale)(std::size_t, const double*, double, double*);
};

const backend& scalar_backend();
#if defined(WSM_HAVE_AVX2_BUILD)
const backend& avx2_backend();
#endif
#if defined(WSM_HAVE_NEON_BUILD)
const backend& neon_backend();
#endif

/// Active backend. Chosen once: WSM_KERNEL env override if set, otherwise the
/// widest ISA the CPU reports.
const backend& active();

/// Force a backend by name ("scalar", "avx2", "neon"); returns false if the
/// name is unknown or unsupported on this machine. Intended for tests.
bool select(const char* name);

} // namespace wsm::jets::kern
