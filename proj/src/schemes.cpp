#include "nomura/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nomura/error.hpp"

namespace nomura {

namespace {

long int_pow(long base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

long binomial(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

[[noreturn]] void axiom_failure(int axiom, const std::string& detail, double residual = 0.0) {
    throw Error(Errc::scheme_axiom, "scheme axiom " + std::to_string(axiom) + " fails: " + detail, residual, axiom);
}

double class_span_residual(std::span<const ComplexMatrix> classes, const ComplexMatrix& m) {
    ComplexMatrix r = m;
    for (const auto& a : classes) {
        const double count = a.real().sum();
        if (count == 0.0)
            continue;
        r -= ((a.array() * m.array()).sum() / count) * a;
    }
    return r.norm();
}

std::vector<Index> support_of(const ComplexMatrix& a) {
    std::vector<Index> s;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j).real() > 0.5)
                s.push_back(i * a.cols() + j);
    return s;
}

} // namespace

AssociationScheme verify_scheme(std::vector<ComplexMatrix> classes, const Tolerance& tol) {
    if (classes.empty())
        throw Error(Errc::input, "scheme needs at least one class");
    const Index v = classes.front().rows();
    for (auto& a : classes) {
        if (a.rows() != v || a.cols() != v)
            throw Error(Errc::input, "scheme classes must share one square order");
        if (!is_zero_one(a, tol.rel()))
            throw Error(Errc::input, "scheme classes must be 01 matrices");
        a = a.unaryExpr([](cd x) { return std::abs(x) > 0.5 ? cd{1.0, 0.0} : cd{0.0, 0.0}; });
    }

    if (classes.front() != identity(v))
        axiom_failure(1, "A_0 is not the identity");

    ComplexMatrix total = ComplexMatrix::Zero(v, v);
    for (const auto& a : classes)
        total += a;
    if (total != ones(v))
        axiom_failure(2, "classes do not sum to J");

    for (std::size_t i = 0; i < classes.size(); ++i) {
        const ComplexMatrix t = classes[i].transpose();
        if (std::none_of(classes.begin(), classes.end(), [&](const ComplexMatrix& b) { return b == t; }))
            axiom_failure(3, "transpose of A_" + std::to_string(i) + " is not a class");
    }

    const double limit = tol.rel() * static_cast<double>(v);
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = 0; j < classes.size(); ++j) {
            const ComplexMatrix prod = classes[i] * classes[j];
            const double res = class_span_residual(classes, prod);
            if (res > limit)
                axiom_failure(4, "A_" + std::to_string(i) + " A_" + std::to_string(j) + " leaves the span", res);
        }
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            const double res = (classes[i] * classes[j] - classes[j] * classes[i]).norm();
            if (res > limit)
                axiom_failure(5, "A_" + std::to_string(i) + " and A_" + std::to_string(j) + " do not commute", res);
        }

    return {static_cast<int>(v), std::move(classes)};
}

AssociationScheme tensor_scheme(const AssociationScheme& a, const AssociationScheme& b, const Tolerance& tol) {
    std::vector<ComplexMatrix> classes;
    classes.reserve(a.classes.size() * b.classes.size());
    for (const auto& x : a.classes)
        for (const auto& y : b.classes)
            classes.push_back(kron(x, y));
    return verify_scheme(std::move(classes), tol);
}

AssociationScheme trivial_scheme(int q, const Tolerance& tol) {
    if (q < 1)
        throw Error(Errc::input, "scheme needs q >= 1");
    if (q == 1)
        return verify_scheme({identity(1)}, tol);
    return verify_scheme({identity(q), ones(q) - identity(q)}, tol);
}

AssociationScheme cyclic_scheme(int q, const Tolerance& tol) {
    if (q < 1)
        throw Error(Errc::input, "scheme needs q >= 1");
    std::vector<ComplexMatrix> classes;
    for (int k = 0; k < q; ++k) {
        ComplexMatrix c = ComplexMatrix::Zero(q, q);
        for (int i = 0; i < q; ++i)
            c(i, (i + k) % q) = 1.0;
        classes.push_back(std::move(c));
    }
    return verify_scheme(std::move(classes), tol);
}

namespace {

void nondecreasing_tuples(int n, int symbols, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    const int start = cur.empty() ? 0 : cur.back();
    for (int s = start; s < symbols; ++s) {
        cur.push_back(s);
        nondecreasing_tuples(n, symbols, cur, out);
        cur.pop_back();
    }
}

} // namespace

AssociationScheme generalized_hamming(const AssociationScheme& a, int n, const Tolerance& tol) {
    if (n < 1)
        throw Error(Errc::input, "generalized_hamming needs n >= 1");
    if (int_pow(a.v, n) > 1024)
        throw Error(Errc::size_guard, "generalized_hamming: q^n exceeds 1024");
    std::vector<std::vector<int>> multisets;
    std::vector<int> cur;
    nondecreasing_tuples(n, static_cast<int>(a.classes.size()), cur, multisets);

    std::vector<ComplexMatrix> classes;
    classes.reserve(multisets.size());
    for (const auto& ms : multisets) {
        const auto size = int_pow(a.v, n);
        ComplexMatrix sum = ComplexMatrix::Zero(size, size);
        std::vector<int> word = ms; // sorted, so next_permutation walks every distinct arrangement once
        do {
            ComplexMatrix term = ComplexMatrix::Ones(1, 1);
            for (int idx : word)
                term = kron(term, a.classes[static_cast<std::size_t>(idx)]);
            sum += term;
        } while (std::next_permutation(word.begin(), word.end()));
        classes.push_back(std::move(sum));
    }
    return verify_scheme(std::move(classes), tol);
}

ComplexMatrix hamming_adjacency(int n, int q) {
    if (n < 1 || q < 2)
        throw Error(Errc::input, "hamming_adjacency needs n >= 1 and q >= 2");
    if (int_pow(q, n) > 4096)
        throw Error(Errc::size_guard, "hamming_adjacency: q^n exceeds 4096");
    const ComplexMatrix base = ones(q) - identity(q);
    ComplexMatrix a = base;
    for (int k = 2; k <= n; ++k) {
        const Index rest = a.rows();
        a = kron(base, identity(rest)) + kron(identity(q), a);
    }
    return a;
}

ComplexVector apply_hamming_adjacency(int n, int q, const ComplexVector& u) {
    const Index size = int_pow(q, n);
    if (u.size() != size)
        throw Error(Errc::input, "apply_hamming_adjacency: length mismatch");
    ComplexVector out = ComplexVector::Zero(size);
    Index stride = 1;
    // Coordinate with the given stride; (J - I) acting on it.
    for (int k = 0; k < n; ++k, stride *= q) {
        const Index period = stride * q;
        for (Index base = 0; base < size; base += period)
            for (Index off = 0; off < stride; ++off) {
                cd total = 0.0;
                for (int l = 0; l < q; ++l)
                    total += u(base + off + l * stride);
                for (int l = 0; l < q; ++l) {
                    const Index x = base + off + l * stride;
                    out(x) += total - u(x);
                }
            }
    }
    return out;
}

HammingSpectrum hamming_spectrum(int n, int q, const Tolerance& /*tol*/) {
    if (n < 0 || q < 2)
        throw Error(Errc::input, "hamming_spectrum needs n >= 0 and q >= 2");
    const long size = int_pow(q, n);
    if (size > 4096)
        throw Error(Errc::size_guard, "hamming_spectrum: q^n exceeds 4096");

    HammingSpectrum s;
    s.n = n;
    s.q = q;
    for (int h = 0; h <= n; ++h) {
        s.eigenvalues.push_back((q - 1) * (n - h) - h);
        s.multiplicities.push_back(int_pow(q - 1, h) * binomial(n, h));
        s.eigenbasis.emplace_back(size, s.multiplicities.back());
    }

    // Column `label` of the normalized q^n-point product DFT; its weight is
    // the number of non-constant factors.
    std::vector<Index> filled(static_cast<std::size_t>(n + 1), 0);
    std::vector<int> x_digits(static_cast<std::size_t>(n)), l_digits(static_cast<std::size_t>(n));
    const double scale = 1.0 / std::sqrt(static_cast<double>(size));
    for (long label = 0; label < size; ++label) {
        int weight = 0;
        for (int k = n - 1, rest = static_cast<int>(label); k >= 0; --k, rest /= q) {
            l_digits[static_cast<std::size_t>(k)] = rest % q;
            weight += rest % q != 0;
        }
        auto& col = s.eigenbasis[static_cast<std::size_t>(weight)];
        const Index c = filled[static_cast<std::size_t>(weight)]++;
        for (long x = 0; x < size; ++x) {
            int phase = 0;
            for (int k = n - 1, rest = static_cast<int>(x); k >= 0; --k, rest /= q)
                phase += (rest % q) * l_digits[static_cast<std::size_t>(k)];
            phase %= q;
            col(x, c) = phase == 0 ? cd{scale, 0.0} : std::polar(scale, 2.0 * std::numbers::pi * phase / q);
        }
    }

    if (n >= 1)
        for (int h = 0; h <= n; ++h) {
            const auto& basis = s.eigenbasis[static_cast<std::size_t>(h)];
            for (Index c = 0; c < basis.cols(); ++c) {
                const ComplexVector u = basis.col(c);
                const double r = (apply_hamming_adjacency(n, q, u) - s.eigenvalues[static_cast<std::size_t>(h)] * u).norm();
                s.eigen_residual = std::max(s.eigen_residual, r);
            }
        }
    return s;
}

namespace {

double projection_residual(const ComplexMatrix& orthonormal_cols, const ComplexVector& x) {
    if (orthonormal_cols.cols() == 0)
        return x.norm();
    return (x - orthonormal_cols * (orthonormal_cols.adjoint() * x)).norm();
}

} // namespace

RecursionReport check_eigenvector_recursion(const HammingSpectrum& spec, const Tolerance& tol) {
    if (spec.n < 1)
        throw Error(Errc::input, "eigenvector recursion needs n >= 1");
    const int n = spec.n;
    const int q = spec.q;
    const HammingSpectrum sub = hamming_spectrum(n - 1, q, tol);
    const Index len = int_pow(q, n - 1);

    RecursionReport r;
    r.n = n;
    r.q = q;
    for (int h = 1; h <= n; ++h) {
        const auto& basis = spec.eigenbasis[static_cast<std::size_t>(h)];
        const ComplexMatrix& lower = sub.eigenbasis[static_cast<std::size_t>(h - 1)];
        const bool target_empty = h > n - 1;
        for (Index c = 0; c < basis.cols(); ++c) {
            ++r.vectors_checked;
            const ComplexVector u = basis.col(c);
            const BlockView blocks(u, len);
            ComplexVector sum = ComplexVector::Zero(len);
            for (int i = 0; i < q; ++i) {
                sum += blocks.segment(i);
                for (int j = i + 1; j < q; ++j)
                    r.difference_residual =
                        std::max(r.difference_residual, projection_residual(lower, blocks.segment(i) - blocks.segment(j)));
            }
            if (target_empty) {
                r.empty_target_read_as_zero = true;
                r.sum_residual = std::max(r.sum_residual, sum.norm());
            } else {
                r.sum_residual = std::max(r.sum_residual,
                                          projection_residual(sub.eigenbasis[static_cast<std::size_t>(h)], sum));
            }

            if (h == 1) {
                const ComplexVector w = sum / static_cast<double>(q);
                cd coeff_sum = 0.0;
                for (int i = 0; i < q; ++i) {
                    const ComplexVector diff = blocks.segment(i) - w;
                    const cd a = diff.mean();
                    coeff_sum += a;
                    r.v1_reconstruction_residual = std::max(
                        r.v1_reconstruction_residual, (diff - a * ComplexVector::Ones(len)).norm());
                }
                r.v1_coefficient_sum = std::max(r.v1_coefficient_sum, std::abs(coeff_sum));
                const ComplexMatrix v1 = n - 1 >= 1 ? sub.eigenbasis[1] : ComplexMatrix(len, 0);
                r.v1_w_residual = std::max(r.v1_w_residual, projection_residual(v1, w));
            }
        }
    }
    r.pass = std::max({r.difference_residual, r.sum_residual, r.v1_reconstruction_residual, r.v1_coefficient_sum,
                       r.v1_w_residual}) <= tol.rel();
    return r;
}

double scheme_span_residual(const AssociationScheme& s, const ComplexMatrix& m) {
    if (m.rows() != s.v || m.cols() != s.v)
        throw Error(Errc::input, "scheme_membership: order mismatch");
    const double nm = m.norm();
    return nm == 0.0 ? 0.0 : class_span_residual(s.classes, m) / nm;
}

bool scheme_membership(const AssociationScheme& s, const ComplexMatrix& m, const Tolerance& tol) {
    return scheme_span_residual(s, m) <= tol.rel();
}

bool schemes_equal(const AssociationScheme& a, const AssociationScheme& b, const Tolerance& /*tol*/) {
    if (a.v != b.v || a.classes.size() != b.classes.size())
        return false;
    std::vector<std::vector<Index>> sa, sb;
    for (const auto& c : a.classes)
        sa.push_back(support_of(c));
    for (const auto& c : b.classes)
        sb.push_back(support_of(c));
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
}

BlockView::BlockView(Eigen::Ref<const ComplexMatrix> parent, Index block_len)
    : parent_(parent), m_(block_len), n_(block_len > 0 ? parent.rows() / block_len : 0) {
    if (block_len <= 0 || n_ * m_ != parent.rows())
        throw Error(Errc::input, "BlockView: block length does not divide the parent dimension");
}

ComplexVector BlockView::segment(Index i) const { return parent_.col(0).segment(i * m_, m_); }

ComplexMatrix BlockView::block(Index i, Index j) const { return parent_.block(i * m_, j * m_, m_, m_); }

} // namespace nomura
