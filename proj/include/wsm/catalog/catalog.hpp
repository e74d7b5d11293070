#pragma once

/** \file
 *  \brief Built-in example configurations with known expected values.
 *
 *  Each entry names an ambient warped product and an immersion into it,
 *  plus a map of expected quantities used by the verification harness:
 *
 *    alpha_norm2, mean_curvature (norm), psi_fit, psi_star, kappa, big_b, b,
 *    t_norm2, laplace_alpha_norm2  -- numeric expectations;
 *    flat_normal_bundle            -- 1: commutators must vanish,
 *                                     0: they must be visibly nonzero.
 *
 *  Entries are kept in alphabetical order by name.
 */

#include <map>
#include <string>
#include <vector>

#include "wsm/ambient/ambient.hpp"
#include "wsm/extrinsic/extrinsic.hpp"

namespace wsm::catalog {

struct entry {
    std::string name;
    std::string summary;
    ambient::config amb;
    extrinsic::immersion imm;
    std::map<std::string, double> expected;
    bool lifted = false;        ///< built by cylinder_lift from `base`
    extrinsic::immersion base;  ///< pre-lift immersion when `lifted`
};

const std::vector<entry>& all();

/// Entry by name; throws errc::config when unknown.
const entry& find(const std::string& name);

/// Human-readable listing of every entry and its expected values.
std::string list_text();

} // namespace wsm::catalog
