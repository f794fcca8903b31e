#include "nomura/typeii.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nomura/error.hpp"
#include "rng.hpp"

namespace nomura {

TypeIIMatrix verify_type_ii(const ComplexMatrix& m, const Tolerance& tol) {
    validate_matrix(m);
    if (m.rows() != m.cols())
        throw Error(Errc::input, "type II check needs a square matrix");
    const auto v = static_cast<double>(m.rows());
    const ComplexMatrix inv = entrywise_inverse(m, tol);
    const ComplexMatrix r = inv.transpose() * m - v * identity(m.rows());
    const double residual = max_abs(r);
    if (!(residual <= tol.rel() * v))
        throw Error(Errc::not_type_ii, "not type II (residual " + std::to_string(residual) + ")", residual);
    return TypeIIMatrix(m, residual);
}

cd potts_parameter(int v) {
    if (v < 2)
        throw Error(Errc::input, "potts needs v >= 2");
    const double b = v - 2.0;
    const double disc = b * b - 4.0;
    if (disc < 0.0)
        return {-b / 2.0, std::sqrt(-disc) / 2.0};
    if (disc == 0.0)
        return {-b / 2.0, 0.0};
    // Roots multiply to 1; take the larger one from the well-conditioned one.
    const double small = (-b - std::sqrt(disc)) / 2.0;
    return {1.0 / small, 0.0};
}

TypeIIMatrix potts(int v, const Tolerance& tol) {
    const cd t = potts_parameter(v);
    return verify_type_ii((t - 1.0) * identity(v) + ones(v), tol);
}

ComplexMatrix dft_matrix(int n) {
    if (n < 1)
        throw Error(Errc::input, "dft order must be positive");
    ComplexMatrix f(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            // Reduce the exponent first so equal roots of unity are bitwise equal.
            const int e = (j * l) % n;
            f(j, l) = e == 0 ? cd{1.0, 0.0} : std::polar(1.0, 2.0 * std::numbers::pi * e / n);
        }
    return f;
}

TypeIIMatrix char_table_abelian(std::span<const int> orders, const Tolerance& tol) {
    if (orders.empty())
        throw Error(Errc::input, "char_table_abelian needs at least one group order");
    ComplexMatrix acc = ComplexMatrix::Ones(1, 1);
    for (int n : orders) {
        if (n < 2)
            throw Error(Errc::input, "group orders must be >= 2");
        acc = kron(acc, dft_matrix(n));
    }
    return verify_type_ii(acc, tol);
}

bool is_normalized(const ComplexMatrix& w, double atol) {
    for (Index j = 0; j < w.cols(); ++j)
        if (std::abs(w(0, j) - 1.0) > atol)
            return false;
    for (Index i = 0; i < w.rows(); ++i)
        if (std::abs(w(i, 0) - 1.0) > atol)
            return false;
    return true;
}

Equivalent normalize(const TypeIIMatrix& w, const Tolerance& tol) {
    const ComplexMatrix& m = w.matrix();
    const Index v = m.rows();
    ComplexVector right(v);
    for (Index j = 0; j < v; ++j)
        right(j) = 1.0 / m(0, j);
    ComplexVector left(v);
    for (Index i = 0; i < v; ++i)
        left(i) = 1.0 / (m(i, 0) * right(0));

    ComplexMatrix out = left.asDiagonal() * m * right.asDiagonal();
    // These entries are 1 by construction; pin them exactly.
    out.row(0).setOnes();
    out.col(0).setOnes();
    return {verify_type_ii(out, tol), PermDiag::from_diag(std::move(left)), PermDiag::from_diag(std::move(right))};
}

namespace {

Permutation random_permutation(detail::Rng& rng, int n) {
    Permutation p = identity_permutation(n);
    for (int i = n - 1; i > 0; --i)
        std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(rng.below(i + 1))]);
    return p;
}

ComplexVector random_diagonal(detail::Rng& rng, int n) {
    ComplexVector d(n);
    for (int i = 0; i < n; ++i) {
        const double modulus = std::exp2(2.0 * rng.uniform() - 1.0);
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        d(i) = std::polar(modulus, phase);
    }
    return d;
}

} // namespace

Equivalent scramble(const TypeIIMatrix& w, std::uint64_t seed, ScrambleMode mode, const Tolerance& tol) {
    detail::Rng rng(seed);
    const int v = w.order();
    Permutation p1 = random_permutation(rng, v);
    if (mode == ScrambleMode::columns_only)
        p1 = identity_permutation(v);
    ComplexVector d1 = random_diagonal(rng, v);
    ComplexVector d2 = random_diagonal(rng, v);
    Permutation p2 = random_permutation(rng, v);

    PermDiag left{std::move(p1), std::move(d1)};
    PermDiag right{std::move(p2), std::move(d2)};
    ComplexMatrix out = apply_equivalence(w.matrix(), left, right);
    return {verify_type_ii(out, tol), std::move(left), std::move(right)};
}

TypeIIMatrix tensor(const TypeIIMatrix& a, const TypeIIMatrix& b, const Tolerance& tol) {
    return verify_type_ii(kron(a.matrix(), b.matrix()), tol);
}

TypeIIMatrix transpose(const TypeIIMatrix& w, const Tolerance& tol) {
    return verify_type_ii(w.matrix().transpose(), tol);
}

} // namespace nomura
