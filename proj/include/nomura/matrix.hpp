#pragma once

// Dense complex matrix kernel shared by every module.
//
// Matrices are plain Eigen dynamic complex matrices. Values are never
// mutated after construction by library code; every operation returns a new
// matrix.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nomura {

using cd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Single relative threshold used for equality, rank and residual decisions.
class Tolerance {
public:
    Tolerance() = default;
    explicit Tolerance(double rel);

    double rel() const noexcept { return rel_; }

private:
    double rel_ = 1e-8;
};

/// Permutation of {0..v-1}. The associated matrix P satisfies
/// P e_i = e_{perm[i]}, i.e. P(perm[i], i) = 1.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
bool is_permutation(std::span<const int> perm);
Permutation inverse_permutation(std::span<const int> perm);
/// (a o b)[i] = a[b[i]], the permutation of the matrix product P_a P_b.
Permutation compose_permutations(std::span<const int> a, std::span<const int> b);
ComplexMatrix permutation_matrix(std::span<const int> perm);

/// A monomial matrix split into a permutation and an invertible diagonal.
///
/// The same data is read two ways. On the left of a matrix it means P*D
/// and on the right it means D*P, matching W1 = P1 D1 W2 D2 P2.
struct PermDiag {
    Permutation perm;
    ComplexVector diag;

    static PermDiag identity(int n);
    static PermDiag from_perm(Permutation perm);
    static PermDiag from_diag(ComplexVector diag);

    int size() const { return static_cast<int>(perm.size()); }
};

/// Throws Errc::input unless perm is a bijection and every diag entry is nonzero.
void validate(const PermDiag& pd);

ComplexMatrix left_matrix(const PermDiag& pd);  // P*D
ComplexMatrix right_matrix(const PermDiag& pd); // D*P

/// (P D)^{-1} in left form.
PermDiag inverse_left(const PermDiag& pd);
/// (D P)^{-1} in right form.
PermDiag inverse_right(const PermDiag& pd);
/// Left form of (P_a D_a)(P_b D_b).
PermDiag compose_left(const PermDiag& a, const PermDiag& b);
/// Right form of (D_a P_a)(D_b P_b).
PermDiag compose_right(const PermDiag& a, const PermDiag& b);
/// I_q (x) pd. Valid for both readings since I(x)(PD) = (I(x)P)(I(x)D).
PermDiag kron_identity(int q, const PermDiag& pd);

ComplexMatrix identity(Index n);
ComplexMatrix ones(Index n);

/// Throws Errc::input for empty matrices or non-finite entries.
void validate_matrix(const ComplexMatrix& a);

double max_abs(const ComplexMatrix& a);
bool is_zero_one(const ComplexMatrix& a, double atol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix schur(const ComplexMatrix& a, const ComplexMatrix& b);

/// Entrywise reciprocal. Entries with modulus below rel * max|a| raise
/// Errc::zero_entry.
ComplexMatrix entrywise_inverse(const ComplexMatrix& a, const Tolerance& tol = {});

/// Orthonormal basis of the right nullspace of a.
///
/// Singular values sigma <= rel * sigma_max count as zero. Vectors come in
/// V-column order (descending singular value) and each is rotated so its
/// largest-modulus component (first on ties) is real and positive.
std::vector<ComplexVector> nullspace(const ComplexMatrix& a, const Tolerance& tol = {});

/// Rotate v by a unit phase so its largest-modulus component is real positive.
ComplexVector fix_phase(const ComplexVector& v);

/// P1 D1 w D2 P2 with (P1, D1) from left and (D2, P2) from right.
ComplexMatrix apply_equivalence(const ComplexMatrix& w, const PermDiag& left, const PermDiag& right);

/// P m P^T for the permutation matrix of perm.
ComplexMatrix conjugate_by(const ComplexMatrix& m, std::span<const int> perm);

/// Frobenius distance from x to span(basis), for a Frobenius-orthonormal basis.
double span_residual(std::span<const ComplexMatrix> orthonormal_basis, const ComplexMatrix& x);

/// Frobenius-orthonormalize a list of matrices, dropping dependent members
/// (relative to rel). Order is preserved for the survivors.
std::vector<ComplexMatrix> orthonormalize(std::span<const ComplexMatrix> mats, const Tolerance& tol = {});

} // namespace nomura
