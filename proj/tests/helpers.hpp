#pragma once

// Test-only fixtures and independent oracles. Nothing here calls into the
// code path it is used to check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "nomura/matrix.hpp"

namespace nomura::testing {

inline const cd kOmega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);

/// The 3x3 type II matrix [[1,1,1],[1,w,w^2],[1,w^2,w]], typed in by hand.
inline ComplexMatrix f3() {
    const cd w = kOmega;
    ComplexMatrix m(3, 3);
    m << 1.0, 1.0, 1.0, 1.0, w, w * w, 1.0, w * w, w;
    return m;
}

/// The 4x4 matrix with free parameter alpha whose Nomura algebra is
/// three-dimensional for alpha off the fourth roots of unity.
inline ComplexMatrix alpha_matrix(cd alpha) {
    ComplexMatrix m(4, 4);
    m << 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, 1.0, -1.0, alpha, -alpha, 1.0, -1.0, -alpha, alpha;
    return m;
}

/// Cyclic shift C(i, i+k mod q) = 1.
inline ComplexMatrix shift(int q, int k) {
    ComplexMatrix c = ComplexMatrix::Zero(q, q);
    for (int i = 0; i < q; ++i)
        c(i, (i + k) % q) = 1.0;
    return c;
}

/// Largest |sum_x W(x,a)/W(x,b) - delta_ab v| over all (a,b), by direct
/// summation of the defining condition.
inline double type_ii_defect(const ComplexMatrix& w) {
    const Index v = w.rows();
    double worst = 0.0;
    for (Index a = 0; a < v; ++a)
        for (Index b = 0; b < v; ++b) {
            cd s = 0.0;
            for (Index x = 0; x < v; ++x)
                s += w(x, a) / w(x, b);
            worst = std::max(worst, std::abs(s - (a == b ? static_cast<double>(v) : 0.0)));
        }
    return worst;
}

/// Rayleigh-quotient eigenvalue of m on W e_a o W^(-) e_b, computed entry by entry.
inline cd rayleigh_eigenvalue(const ComplexMatrix& w, const ComplexMatrix& m, Index a, Index b) {
    const Index v = w.rows();
    ComplexVector y(v);
    for (Index x = 0; x < v; ++x)
        y(x) = w(x, a) / w(x, b);
    return y.dot(m * y) / y.squaredNorm();
}

/// Dimension of N(W) by an independent parameterization: every M in N(W)
/// is Y_0 diag(l) Y_0^{-1} with Y_0 = [Y_{0,b}]_b, and l is constrained by
/// requiring Y_a^{-1} M Y_a to be diagonal for the remaining a.
inline int nomura_dimension_oracle(const ComplexMatrix& w) {
    const Index v = w.rows();
    auto block = [&](Index a) {
        ComplexMatrix y(v, v);
        for (Index b = 0; b < v; ++b)
            for (Index x = 0; x < v; ++x)
                y(x, b) = w(x, a) / w(x, b);
        return y;
    };
    const ComplexMatrix y0 = block(0);
    const ComplexMatrix y0inv = y0.inverse();
    ComplexMatrix sys = ComplexMatrix::Zero(v * v * v, v);
    Index row = 0;
    for (Index a = 1; a < v; ++a) {
        const ComplexMatrix ya = block(a);
        const ComplexMatrix left = ya.inverse() * y0;
        const ComplexMatrix right = y0inv * ya;
        for (Index r = 0; r < v; ++r)
            for (Index c = 0; c < v; ++c) {
                if (r == c)
                    continue;
                for (Index k = 0; k < v; ++k)
                    sys(row, k) = left(r, k) * right(k, c);
                ++row;
            }
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(sys.topRows(std::max<Index>(row, 1)));
    const auto& s = svd.singularValues();
    // entries are O(1), so the cutoff is absolute
    int rank = 0;
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9)
            ++rank;
    return static_cast<int>(v) - (row == 0 ? 0 : rank);
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, Index r, Index c) {
    std::normal_distribution<double> n;
    ComplexMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index j = 0; j < c; ++j)
            m(i, j) = cd{n(rng), n(rng)};
    return m;
}

/// Hamming distance between base-q words x and y of length n.
inline int hamming_distance(int x, int y, int q, int n) {
    int d = 0;
    for (int k = 0; k < n; ++k, x /= q, y /= q)
        d += (x % q) != (y % q);
    return d;
}

} // namespace nomura::testing
