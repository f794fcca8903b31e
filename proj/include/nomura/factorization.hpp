#pragma once

// Kronecker factorization of type II matrices whose Nomura algebra contains
// the structure matrices I_n (x) J_m and J_n (x) I_m, and the recursive
// version driven by the Hamming adjacency A(n).

#include <optional>
#include <vector>

#include "nomura/matrix.hpp"
#include "nomura/nomura.hpp"
#include "nomura/typeii.hpp"

namespace nomura {

/// The relations ~1 (Theta(I_n (x) J_m) = m) and ~2 (Theta(J_n (x) I_m) = n)
/// on column indices. Class ids are assigned in order of smallest member.
struct BlockRelations {
    int m = 0;
    int n = 0;
    std::vector<int> rel1; // class of each index under ~1: m classes of size n
    std::vector<int> rel2; // class of each index under ~2: n classes of size m
};

/// Throws Errc::structure_absent if either structure matrix is not in N(W),
/// Errc::inconsistent_relations if class counts or transversality fail.
BlockRelations block_relations(const TypeIIMatrix& w, const EigenvectorTable& table, int m, int n,
                               const Tolerance& tol = {});

/// Column permutation P (as a PermDiag with unit diagonal) such that WP has
/// ~2 classes {rm, ..., rm+m-1} and ~1 classes {h, m+h, ..., (n-1)m+h}.
PermDiag aligning_permutation(const BlockRelations& r);

struct TensorSplit {
    TypeIIMatrix outer; // U, n x n
    TypeIIMatrix inner; // V, m x m
    double residual = 0.0;
};

/// Reads W = U (x) V off a normalized, aligned matrix: V = W[0,0],
/// U(i,j) = W(im, jm). Throws Errc::not_tensor_product if some block
/// W[i,j] differs from U(i,j) V by more than rel * max|W|.
TensorSplit split_tensor(const TypeIIMatrix& wp, int m, int n, const Tolerance& tol = {});

/// W = apply_equivalence(kron(outer, inner), left, right).
struct SingleFactorization {
    TypeIIMatrix outer;
    TypeIIMatrix inner;
    PermDiag left;
    PermDiag right;
    double residual = 0.0; // max entry error of the reconstruction
};

/// block_relations -> aligning_permutation -> normalize(WP) -> split_tensor.
///
/// relabel, when given, is a row permutation pi with W = P_pi X where
/// I_n (x) J_m and J_n (x) I_m lie in N(X); it is folded into the left
/// witness.
SingleFactorization factor_once(const TypeIIMatrix& w, int m, int n, const Tolerance& tol = {},
                                const std::optional<Permutation>& relabel = std::nullopt);

struct StructureMatrices {
    ComplexMatrix iqj; // I_q (x) J_{q^{n-1}}
    ComplexMatrix jqi; // A(n) - A(n) o (I_q (x) J_{q^{n-1}}) + I
};

/// Throws Errc::hamming_absent if A(n) (canonical labeling) is not in N(W),
/// Errc::structure_absent if a recovered matrix fails membership.
StructureMatrices recover_structure_matrices(const TypeIIMatrix& w, const EigenvectorTable& table, int q, int n,
                                             const Tolerance& tol = {});

/// W = apply_equivalence(kron(factors...), left, right).
struct FactorizationResult {
    std::vector<TypeIIMatrix> factors;
    PermDiag left;
    PermDiag right;
    double residual = 0.0;
};

/// Splits off one q x q factor per level while A(k) is in N of the remainder.
///
/// The canonical A(n) must lie in N(W), else Errc::relabel_required. A
/// scrambled W needs relabel: a row permutation pi with W = P_pi X and A(n)
/// in N(X), equivalently P_pi A(n) P_pi^T in N(W). Stage errors are
/// rethrown with their code and a depth prefix.
FactorizationResult factor_full(const TypeIIMatrix& w, int q, int n, const Tolerance& tol = {},
                                const std::optional<Permutation>& relabel = std::nullopt);

ComplexMatrix kron_all(const std::vector<TypeIIMatrix>& factors);

} // namespace nomura
