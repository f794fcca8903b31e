#pragma once

#include <cstdint>
#include <span>

#include "nomura/matrix.hpp"

namespace nomura {

/// A square matrix that has passed the type II check W^(-)T W = vI.
///
/// Instances only come out of verify_type_ii (directly or through the
/// constructors below), so holding one is proof of the check at the
/// tolerance it was made with.
class TypeIIMatrix {
public:
    int order() const noexcept { return static_cast<int>(mat_.rows()); }
    const ComplexMatrix& matrix() const noexcept { return mat_; }
    /// max |W^(-)T W - vI| at verification time.
    double residual() const noexcept { return residual_; }

private:
    TypeIIMatrix(ComplexMatrix m, double residual) : mat_(std::move(m)), residual_(residual) {}
    friend TypeIIMatrix verify_type_ii(const ComplexMatrix&, const Tolerance&);

    ComplexMatrix mat_;
    double residual_;
};

/// Accepts m iff it has no zero entries and max|m^(-)T m - vI| <= rel * v.
/// Throws Errc::zero_entry or Errc::not_type_ii (carrying the residual).
TypeIIMatrix verify_type_ii(const ComplexMatrix& m, const Tolerance& tol = {});

/// Root of t^2 + (v-2)t + 1 = 0 with nonnegative imaginary part, larger real
/// part on ties.
cd potts_parameter(int v);

/// (t-1)I + J for t = potts_parameter(v).
TypeIIMatrix potts(int v, const Tolerance& tol = {});

/// Discrete Fourier matrix F_n(j, l) = exp(2 pi i jl / n), 0-based.
ComplexMatrix dft_matrix(int n);

/// Character table of Z_{n1} x ... x Z_{nk} as a Kronecker product of DFTs.
TypeIIMatrix char_table_abelian(std::span<const int> orders, const Tolerance& tol = {});

/// A type II matrix together with the witnesses that produced it:
/// matrix = apply_equivalence(source, left, right).
struct Equivalent {
    TypeIIMatrix matrix;
    PermDiag left;
    PermDiag right;
};

/// W' = D W D' with first row and column all ones. Permutations are identity.
Equivalent normalize(const TypeIIMatrix& w, const Tolerance& tol = {});

bool is_normalized(const ComplexMatrix& w, double atol);

enum class ScrambleMode {
    full,         // random permutations and diagonals on both sides
    columns_only, // row permutation fixed to identity (row diagonal still random)
};

/// Seeded type II equivalence P1 D1 W D2 P2. Diagonal moduli are
/// log-uniform in [0.5, 2] with uniform phases.
Equivalent scramble(const TypeIIMatrix& w, std::uint64_t seed, ScrambleMode mode = ScrambleMode::full,
                    const Tolerance& tol = {});

/// Kronecker product, re-verified.
TypeIIMatrix tensor(const TypeIIMatrix& a, const TypeIIMatrix& b, const Tolerance& tol = {});

TypeIIMatrix transpose(const TypeIIMatrix& w, const Tolerance& tol = {});

} // namespace nomura
