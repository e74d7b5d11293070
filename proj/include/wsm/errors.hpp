#pragma once

/** \file
 *  \brief Error taxonomy shared by all modules.
 */

#include <stdexcept>
#include <string>

namespace wsm {

enum class errc {
    shape,                 ///< jet operands disagree in (num_vars, degree) or limits exceeded
    singularity,           ///< division by zero constant term, log/sqrt/pow domain violation
    chart_domain,          ///< point outside the conformal chart or warp interval
    config,                ///< malformed ambient/immersion configuration
    parse,                 ///< expression syntax error (carries byte offset)
    spacelike_violation,   ///< induced metric not positive definite (carries eigenvalue)
    frame,                 ///< frame construction failed (degenerate candidate set)
    linear_algebra,        ///< singular matrix in solve/invert
    unsupported_signature, ///< operation requires a definite normal bundle
    precondition,          ///< named precondition of an operation failed
    case_error,            ///< configuration matches no supported case tag
};

class error : public std::runtime_error {
public:
    error(errc kind, std::string what) : std::runtime_error(std::move(what)), kind_(kind) {}
    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

/// Expression syntax error; offset is the byte position in the source string.
class parse_error : public error {
public:
    parse_error(std::size_t offset, const std::string& what)
        : error(errc::parse, what + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Induced metric failed the spacelike test; carries the offending eigenvalue.
class spacelike_error : public error {
public:
    spacelike_error(double eigenvalue, const std::string& what)
        : error(errc::spacelike_violation,
                what + " (min eigenvalue " + std::to_string(eigenvalue) + ")"),
          eigenvalue_(eigenvalue) {}
    double eigenvalue() const noexcept { return eigenvalue_; }

private:
    double eigenvalue_;
};

} // namespace wsm
