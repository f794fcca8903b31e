#pragma once

#include <span>
#include <vector>

#include "nomura/matrix.hpp"

namespace nomura {

/// 01 class matrices A_0 = I, A_1, ..., A_d satisfying the five scheme axioms.
struct AssociationScheme {
    int v = 0;
    std::vector<ComplexMatrix> classes;

    int d() const { return static_cast<int>(classes.size()) - 1; }
};

/// Checks the axioms in order and throws Errc::scheme_axiom with the failing
/// axiom number (1..5); Errc::input for ragged or non-01 input.
AssociationScheme verify_scheme(std::vector<ComplexMatrix> classes, const Tolerance& tol = {});

/// Classes A_i (x) B_j, i major.
AssociationScheme tensor_scheme(const AssociationScheme& a, const AssociationScheme& b, const Tolerance& tol = {});

/// The trivial scheme {I, J - I} on q points.
AssociationScheme trivial_scheme(int q, const Tolerance& tol = {});

/// The group scheme of Z_q: powers of the cyclic shift C(i, i+1 mod q) = 1.
AssociationScheme cyclic_scheme(int q, const Tolerance& tol = {});

/// H(n, A): one class per multiset {i_1 <= ... <= i_n} of class indices (in
/// lexicographic order), equal to the sum over distinct arrangements of
/// A_{i_1} (x) ... (x) A_{i_n}.
AssociationScheme generalized_hamming(const AssociationScheme& a, int n, const Tolerance& tol = {});

/// A(n) = (J_q - I_q) (x) I_{q^{n-1}} + I_q (x) A(n-1), A(1) = J_q - I_q.
/// Vertices are base-q words, last coordinate fastest.
ComplexMatrix hamming_adjacency(int n, int q);

/// A(n) u without forming A(n).
ComplexVector apply_hamming_adjacency(int n, int q, const ComplexVector& u);

struct HammingSpectrum {
    int n = 0;
    int q = 0;
    std::vector<int> eigenvalues;    // theta_h = (q-1)(n-h) - h
    std::vector<long> multiplicities; // (q-1)^h C(n, h)
    /// eigenbasis[h] has orthonormal columns spanning V_h(n).
    std::vector<ComplexMatrix> eigenbasis;
    /// max ||A(n) u - theta_h u|| over all basis vectors.
    double eigen_residual = 0.0;
};

/// Eigenbasis from Kronecker words of normalized DFT columns: the constant
/// column for 1_q and columns 1..q-1 for its complement; V_h collects the
/// words with exactly h non-constant factors. n = 0 gives the 1-point graph.
/// Throws Errc::size_guard for q^n > 4096.
HammingSpectrum hamming_spectrum(int n, int q, const Tolerance& tol = {});

struct RecursionReport {
    int n = 0;
    int q = 0;
    int vectors_checked = 0;
    double difference_residual = 0.0; // u[i] - u[j] vs V_{h-1}(n-1)
    double sum_residual = 0.0;        // sum u[i] vs V_h(n-1)
    /// h == n: V_h(n-1) is empty and the block sum is required to vanish.
    bool empty_target_read_as_zero = false;
    double v1_reconstruction_residual = 0.0; // u[i] = w + a_i 1
    double v1_coefficient_sum = 0.0;         // |sum a_i|
    double v1_w_residual = 0.0;              // w vs V_1(n-1)
    bool pass = false;
};

RecursionReport check_eigenvector_recursion(const HammingSpectrum& spec, const Tolerance& tol = {});

/// True iff m lies in span(s.classes) with relative residual below rel.
bool scheme_membership(const AssociationScheme& s, const ComplexMatrix& m, const Tolerance& tol = {});

/// Distance from m to span(s.classes), relative to ||m||.
double scheme_span_residual(const AssociationScheme& s, const ComplexMatrix& m);

/// Equality of class sets as 01 matrices, ignoring order.
bool schemes_equal(const AssociationScheme& a, const AssociationScheme& b, const Tolerance& tol = {});

/// Block accessors u[i] (length-m segment) and W[i, j] (m x m submatrix),
/// 0-based.
class BlockView {
public:
    /// The parent must outlive the view.
    BlockView(Eigen::Ref<const ComplexMatrix> parent, Index block_len);

    Index block_len() const noexcept { return m_; }
    Index count() const noexcept { return n_; }
    /// Segment i of a column vector parent.
    ComplexVector segment(Index i) const;
    /// Block (i, j) of a square parent.
    ComplexMatrix block(Index i, Index j) const;

private:
    Eigen::Ref<const ComplexMatrix> parent_;
    Index m_;
    Index n_;
};

} // namespace nomura
