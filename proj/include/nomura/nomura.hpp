#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nomura/matrix.hpp"
#include "nomura/typeii.hpp"

namespace nomura {

/// The v^2 vectors Y_{a,b} = W e_a o W^(-) e_b.
struct EigenvectorTable {
    int v = 0;
    /// columns[a].col(b) == Y_{a,b}; each columns[a] is a basis of C^v.
    std::vector<ComplexMatrix> columns;

    ComplexVector y(int a, int b) const { return columns[static_cast<std::size_t>(a)].col(b); }
};

/// Throws Errc::degenerate_table if some {Y_{a,b} : b} fails a full-rank
/// check at tolerance.
EigenvectorTable eigenvector_table(const TypeIIMatrix& w, const Tolerance& tol = {});

struct NomuraAlgebra {
    int v = 0;
    int dim = 0;
    /// Frobenius-orthonormal basis of the solution space.
    std::vector<ComplexMatrix> basis;
    /// Schur idempotents A_0 = I, A_1, ..., A_d (01 matrices).
    std::vector<ComplexMatrix> idempotents;
    /// theta_images[i] = Theta_W(idempotents[i]).
    std::vector<ComplexMatrix> theta_images;
    Tolerance tol;
    EigenvectorTable table;
};

/// The homogeneous system (I - Pi_{a,b}) M Yhat_{a,b} = 0 over vec(M)
/// (column-major), one v-row block per (a,b), Yhat the unit-norm Y_{a,b}.
/// Dense v^3 x v^2; intended for small v and for cross-checking.
ComplexMatrix nomura_constraint_matrix(const EigenvectorTable& table);

/// Computes N(W): solves the projector system, extracts the Schur
/// idempotents with a seeded generic element and evaluates Theta_W on them.
NomuraAlgebra nomura_basis(const TypeIIMatrix& w, const Tolerance& tol = {}, std::uint64_t seed = 42);

/// Partition positions by the values of a random combination of basis and
/// return the class indicators (I-class first, then descending valency,
/// then lexicographic support). Retries up to 5 seeds; throws
/// Errc::not_schur_closed when no partition reproduces the span.
std::vector<ComplexMatrix> schur_idempotents(std::span<const ComplexMatrix> basis, std::uint64_t seed,
                                             const Tolerance& tol = {});

/// Theta_W(m), or nullopt if some Y_{a,b} is not an eigenvector of m.
std::optional<ComplexMatrix> contains(const EigenvectorTable& table, const ComplexMatrix& m,
                                      const Tolerance& tol = {});
std::optional<ComplexMatrix> contains(const TypeIIMatrix& w, const EigenvectorTable& table, const ComplexMatrix& m,
                                      const Tolerance& tol = {});

/// Theta_W(m); throws Errc::not_in_nomura if m is not in N(W).
ComplexMatrix theta(const EigenvectorTable& table, const ComplexMatrix& m, const Tolerance& tol = {});
ComplexMatrix theta(const NomuraAlgebra& alg, const ComplexMatrix& m);

/// Residual bookkeeping for the closure / commutativity / Theta identities,
/// evaluated over every ordered pair of idempotents. All residuals are
/// relative (Frobenius norm of the difference over the operand scale).
struct IdentityReport {
    int pairs = 0;
    double closure_product = 0.0;
    double closure_schur = 0.0;
    double closure_transpose = 0.0;
    double commutativity = 0.0;
    double theta_product = 0.0;   // Theta(M1 M2) vs Theta(M1) o Theta(M2)
    double theta_schur = 0.0;     // Theta(M1 o M2) vs Theta(M1) Theta(M2) / v
    double theta_transpose = 0.0; // Theta(M1^T) vs Theta(M1)^T
    double max_residual = 0.0;
    bool pass = false;
};

IdentityReport check_theorem_identities(const NomuraAlgebra& alg, const Tolerance& tol = {});

struct DualityReport {
    /// Largest relative distance from Theta_W(A_i) to span N(W^T).
    double image_residual = 0.0;
    /// Rank of {Theta_W(A_i)}; onto iff equal to dim N(W^T).
    int image_rank = 0;
    bool onto = false;
    bool same_algebra = false; // span N(W) == span N(W^T)
    double theta_product = 0.0;
    double theta_schur = 0.0;
    /// Per idempotent: does Theta_W(Theta_W(A_i)) = v A_i^T hold? False when
    /// Theta_W(A_i) is not itself in N(W).
    std::vector<bool> self_dual;
    bool pass = false;
};

DualityReport check_formal_duality(const NomuraAlgebra& alg_w, const NomuraAlgebra& alg_wt,
                                   const Tolerance& tol = {});

} // namespace nomura
