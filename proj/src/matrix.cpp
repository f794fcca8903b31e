#include "nomura/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nomura/error.hpp"

namespace nomura {

Tolerance::Tolerance(double rel) : rel_(rel) {
    if (!(rel > 0.0 && rel < 1.0))
        throw Error(Errc::input, "tolerance must lie in (0, 1), got " + std::to_string(rel));
}

Permutation identity_permutation(int n) {
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

bool is_permutation(std::span<const int> perm) {
    const auto n = static_cast<int>(perm.size());
    std::vector<bool> seen(perm.size(), false);
    for (int x : perm) {
        if (x < 0 || x >= n || seen[static_cast<std::size_t>(x)])
            return false;
        seen[static_cast<std::size_t>(x)] = true;
    }
    return true;
}

Permutation inverse_permutation(std::span<const int> perm) {
    Permutation inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    return inv;
}

Permutation compose_permutations(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size())
        throw Error(Errc::input, "compose_permutations: size mismatch");
    Permutation c(a.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
}

ComplexMatrix permutation_matrix(std::span<const int> perm) {
    const auto n = static_cast<Index>(perm.size());
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        p(perm[static_cast<std::size_t>(i)], i) = 1.0;
    return p;
}

PermDiag PermDiag::identity(int n) { return {identity_permutation(n), ComplexVector::Ones(n)}; }

PermDiag PermDiag::from_perm(Permutation perm) {
    const auto n = static_cast<Index>(perm.size());
    return {std::move(perm), ComplexVector::Ones(n)};
}

PermDiag PermDiag::from_diag(ComplexVector diag) {
    return {identity_permutation(static_cast<int>(diag.size())), std::move(diag)};
}

void validate(const PermDiag& pd) {
    if (static_cast<Index>(pd.perm.size()) != pd.diag.size())
        throw Error(Errc::input, "PermDiag: perm and diag lengths differ");
    if (!is_permutation(pd.perm))
        throw Error(Errc::input, "PermDiag: perm is not a bijection");
    for (Index i = 0; i < pd.diag.size(); ++i)
        if (!(std::abs(pd.diag(i)) > 0.0) || !std::isfinite(std::abs(pd.diag(i))))
            throw Error(Errc::input, "PermDiag: diag entry " + std::to_string(i) + " is zero or non-finite");
}

ComplexMatrix left_matrix(const PermDiag& pd) { return permutation_matrix(pd.perm) * pd.diag.asDiagonal(); }

ComplexMatrix right_matrix(const PermDiag& pd) { return pd.diag.asDiagonal() * permutation_matrix(pd.perm); }

// P^T D P puts d[perm[i]] at position i; P D P^T puts d[i] at position perm[i].

PermDiag inverse_left(const PermDiag& pd) {
    // (P D)^{-1} = P^{-1} (P D^{-1} P^T)
    const auto n = pd.diag.size();
    ComplexVector d(n);
    for (Index i = 0; i < n; ++i)
        d(pd.perm[static_cast<std::size_t>(i)]) = 1.0 / pd.diag(i);
    return {inverse_permutation(pd.perm), std::move(d)};
}

PermDiag inverse_right(const PermDiag& pd) {
    // (D P)^{-1} = (P^T D^{-1} P) P^{-1}
    const auto n = pd.diag.size();
    ComplexVector d(n);
    for (Index i = 0; i < n; ++i)
        d(i) = 1.0 / pd.diag(pd.perm[static_cast<std::size_t>(i)]);
    return {inverse_permutation(pd.perm), std::move(d)};
}

PermDiag compose_left(const PermDiag& a, const PermDiag& b) {
    // P_a D_a P_b D_b = P_a P_b (P_b^T D_a P_b) D_b
    if (a.size() != b.size())
        throw Error(Errc::input, "compose_left: size mismatch");
    const auto n = a.diag.size();
    ComplexVector d(n);
    for (Index i = 0; i < n; ++i)
        d(i) = a.diag(b.perm[static_cast<std::size_t>(i)]) * b.diag(i);
    return {compose_permutations(a.perm, b.perm), std::move(d)};
}

PermDiag compose_right(const PermDiag& a, const PermDiag& b) {
    // D_a P_a D_b P_b = D_a (P_a D_b P_a^T) P_a P_b
    if (a.size() != b.size())
        throw Error(Errc::input, "compose_right: size mismatch");
    const auto n = a.diag.size();
    ComplexVector d(n);
    for (Index i = 0; i < n; ++i) {
        const auto j = a.perm[static_cast<std::size_t>(i)];
        d(j) = a.diag(j) * b.diag(i);
    }
    return {compose_permutations(a.perm, b.perm), std::move(d)};
}

PermDiag kron_identity(int q, const PermDiag& pd) {
    const int s = pd.size();
    PermDiag out{Permutation(static_cast<std::size_t>(q * s)), ComplexVector(q * s)};
    for (int blk = 0; blk < q; ++blk)
        for (int i = 0; i < s; ++i) {
            out.perm[static_cast<std::size_t>(blk * s + i)] = blk * s + pd.perm[static_cast<std::size_t>(i)];
            out.diag(blk * s + i) = pd.diag(i);
        }
    return out;
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix ones(Index n) { return ComplexMatrix::Ones(n, n); }

void validate_matrix(const ComplexMatrix& a) {
    if (a.rows() <= 0 || a.cols() <= 0)
        throw Error(Errc::input, "matrix must have positive dimensions");
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                throw Error(Errc::input, "matrix has a non-finite entry at (" + std::to_string(i) + ", " +
                                             std::to_string(j) + ")");
}

double max_abs(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

bool is_zero_one(const ComplexMatrix& a, double atol) {
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (std::abs(a(i, j)) > atol && std::abs(a(i, j) - 1.0) > atol)
                return false;
    return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix schur(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(Errc::input, "schur: dimension mismatch");
    return a.cwiseProduct(b);
}

ComplexMatrix entrywise_inverse(const ComplexMatrix& a, const Tolerance& tol) {
    const double floor = tol.rel() * max_abs(a);
    ComplexMatrix out(a.rows(), a.cols());
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i) {
            const cd x = a(i, j);
            if (std::abs(x) <= floor || x == cd{0.0, 0.0})
                throw Error(Errc::zero_entry,
                            "zero entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            out(i, j) = 1.0 / x;
        }
    return out;
}

ComplexVector fix_phase(const ComplexVector& v) {
    if (v.size() == 0)
        return v;
    Index pivot = 0;
    double best = -1.0;
    for (Index i = 0; i < v.size(); ++i) {
        // Ties resolved toward the first index; the small slack keeps the
        // choice stable against last-bit noise.
        if (std::abs(v(i)) > best * (1.0 + 1e-12) + 1e-300) {
            best = std::abs(v(i));
            pivot = i;
        }
    }
    if (best <= 0.0)
        return v;
    const cd phase = std::conj(v(pivot)) / best;
    return v * phase;
}

std::vector<ComplexVector> nullspace(const ComplexMatrix& a, const Tolerance& tol) {
    const Index n = a.cols();
    if (n == 0)
        return {};
    // One-sided Jacobi: BDCSVD loses accuracy (and can return NaN) when many
    // singular values coincide, which constraint systems here routinely do.
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() > 0 ? s(0) : 0.0;
    Index rank = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > tol.rel() * smax)
            ++rank;
    std::vector<ComplexVector> out;
    out.reserve(static_cast<std::size_t>(n - rank));
    for (Index k = rank; k < n; ++k)
        out.push_back(fix_phase(svd.matrixV().col(k)));
    return out;
}

ComplexMatrix apply_equivalence(const ComplexMatrix& w, const PermDiag& left, const PermDiag& right) {
    if (left.size() != w.rows() || right.size() != w.cols())
        throw Error(Errc::input, "apply_equivalence: size mismatch");
    validate(left);
    validate(right);
    // (P1 D1 w)(perm1[i], j) = d1[i] w(i, j);  (x D2 P2)(i, j) = x(i, perm2[j]) d2[perm2[j]]
    ComplexMatrix rows(w.rows(), w.cols());
    for (Index i = 0; i < w.rows(); ++i)
        rows.row(left.perm[static_cast<std::size_t>(i)]) = left.diag(i) * w.row(i);
    ComplexMatrix out(w.rows(), w.cols());
    for (Index j = 0; j < w.cols(); ++j) {
        const auto k = right.perm[static_cast<std::size_t>(j)];
        out.col(j) = rows.col(k) * right.diag(k);
    }
    return out;
}

ComplexMatrix conjugate_by(const ComplexMatrix& m, std::span<const int> perm) {
    if (static_cast<Index>(perm.size()) != m.rows() || m.rows() != m.cols())
        throw Error(Errc::input, "conjugate_by: size mismatch");
    ComplexMatrix out(m.rows(), m.cols());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = m(i, j);
    return out;
}

double span_residual(std::span<const ComplexMatrix> orthonormal_basis, const ComplexMatrix& x) {
    ComplexMatrix r = x;
    // Two passes of projection removal; the second mops up rounding.
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : orthonormal_basis) {
            const cd c = (b.array().conjugate() * r.array()).sum();
            r -= c * b;
        }
    return r.norm();
}

std::vector<ComplexMatrix> orthonormalize(std::span<const ComplexMatrix> mats, const Tolerance& tol) {
    std::vector<ComplexMatrix> out;
    for (const auto& m : mats) {
        const double n0 = m.norm();
        if (n0 == 0.0)
            continue;
        ComplexMatrix r = m;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : out) {
                const cd c = (b.array().conjugate() * r.array()).sum();
                r -= c * b;
            }
        const double n1 = r.norm();
        if (n1 > tol.rel() * n0 * 10.0)
            out.push_back(r / n1);
    }
    return out;
}

} // namespace nomura
