#pragma once

#include <stdexcept>
#include <string>

namespace nomura {

enum class Errc {
    input,                  // malformed arguments or shapes
    zero_entry,             // entrywise inverse hit a (near) zero
    not_type_ii,            // W^(-)T W deviates from vI
    degenerate_table,       // Y_{a,b} columns fail to span at tolerance
    not_schur_closed,       // generic-element partition does not span the basis
    not_in_nomura,          // some Y_{a,b} is not an eigenvector
    scheme_axiom,           // association scheme axiom failed (see axiom())
    size_guard,             // problem too large for dense construction
    structure_absent,       // I(x)J or J(x)I missing from N(W)
    inconsistent_relations, // block relations violate partition counts
    not_tensor_product,     // block read-off residual too large
    hamming_absent,         // A(n) not in N(W)
    relabel_required,       // A(n) not in N(W) in the canonical labeling
};

/// True for errors caused by the caller's input rather than by a
/// mathematical property of the data. The CLI maps these to exit code 2.
constexpr bool is_input_error(Errc c) { return c == Errc::input || c == Errc::size_guard; }

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, double residual = 0.0, int axiom = 0)
        : std::runtime_error(what), code_(code), residual_(residual), axiom_(axiom) {}

    Errc code() const noexcept { return code_; }
    double residual() const noexcept { return residual_; }
    int axiom() const noexcept { return axiom_; }

private:
    Errc code_;
    double residual_;
    int axiom_;
};

} // namespace nomura
