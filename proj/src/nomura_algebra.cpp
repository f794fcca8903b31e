#include "nomura/nomura.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nomura/error.hpp"
#include "rng.hpp"

namespace nomura {

EigenvectorTable eigenvector_table(const TypeIIMatrix& w, const Tolerance& tol) {
    const ComplexMatrix& m = w.matrix();
    const ComplexMatrix inv = entrywise_inverse(m, tol);
    const int v = w.order();
    EigenvectorTable table{v, {}};
    table.columns.reserve(static_cast<std::size_t>(v));
    for (int a = 0; a < v; ++a) {
        // Y_{a,b} = W e_a o W^(-) e_b, so column block a is diag(W e_a) W^(-).
        ComplexMatrix ya = m.col(a).asDiagonal() * inv;
        Eigen::JacobiSVD<ComplexMatrix> svd(ya);
        const auto& s = svd.singularValues();
        if (!(s(s.size() - 1) > tol.rel() * s(0)))
            throw Error(Errc::degenerate_table, "degenerate table: Y_{" + std::to_string(a) +
                                                    ",b} do not span at tolerance");
        table.columns.push_back(std::move(ya));
    }
    return table;
}

namespace {

ComplexMatrix unit_columns(const ComplexMatrix& ya) { return ya.colwise().normalized(); }

// Euclidean norm of the projector system applied to vec(M).
double constraint_norm(const EigenvectorTable& table, const ComplexMatrix& m) {
    double sq = 0.0;
    for (const auto& ya : table.columns) {
        const ComplexMatrix yh = unit_columns(ya);
        const ComplexMatrix my = m * yh;
        for (Index b = 0; b < yh.cols(); ++b) {
            const cd c = yh.col(b).dot(my.col(b));
            sq += (my.col(b) - c * yh.col(b)).squaredNorm();
        }
    }
    return std::sqrt(sq);
}

double relative(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    const double scale = std::max({1.0, lhs.norm(), rhs.norm()});
    return (lhs - rhs).norm() / scale;
}

} // namespace

ComplexMatrix nomura_constraint_matrix(const EigenvectorTable& table) {
    const Index v = table.v;
    ComplexMatrix a(v * v * v, v * v);
    Index row = 0;
    for (const auto& ya : table.columns) {
        const ComplexMatrix yh = unit_columns(ya);
        for (Index b = 0; b < v; ++b) {
            const ComplexVector y = yh.col(b);
            const ComplexMatrix proj = identity(v) - y * y.adjoint();
            // vec(M y) = (y^T (x) I) vec(M)
            a.block(row, 0, v, v * v) = kron(y.transpose(), proj);
            row += v;
        }
    }
    return a;
}

NomuraAlgebra nomura_basis(const TypeIIMatrix& w, const Tolerance& tol, std::uint64_t seed) {
    EigenvectorTable table = eigenvector_table(w, tol);
    const Index v = table.v;
    const Index n = v * v;

    // Normal equations of the projector system, assembled from its Kronecker
    // structure: G = C (x) I - Z Z^H with C = sum conj(y) y^T and
    // Z = [conj(y) (x) y] over all unit Y_{a,b}.
    ComplexMatrix c = ComplexMatrix::Zero(v, v);
    ComplexMatrix z(n, n);
    Index col = 0;
    for (const auto& ya : table.columns) {
        const ComplexMatrix yh = unit_columns(ya);
        c += yh.conjugate() * yh.transpose();
        for (Index b = 0; b < v; ++b, ++col)
            z.col(col) = kron(yh.col(b).conjugate(), yh.col(b));
    }
    ComplexMatrix gram = kron(c, identity(v));
    gram.noalias() -= z * z.adjoint();

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
    const auto& lambda = eig.eigenvalues();
    const double sigma_max = std::sqrt(std::max(lambda(n - 1), 0.0));

    // Eigenvalues only resolve sigma^2 to ~eps * lambda_max, so singular
    // values of the small candidates are measured on the system itself.
    std::vector<ComplexMatrix> basis;
    for (Index k = 0; k < n; ++k) {
        if (lambda(k) > 1e-4 * lambda(n - 1))
            break;
        const ComplexVector x = fix_phase(eig.eigenvectors().col(k));
        const ComplexMatrix m = Eigen::Map<const ComplexMatrix>(x.data(), v, v);
        if (constraint_norm(table, m) <= tol.rel() * sigma_max)
            basis.push_back(m);
    }

    NomuraAlgebra alg;
    alg.v = static_cast<int>(v);
    alg.dim = static_cast<int>(basis.size());
    alg.idempotents = schur_idempotents(basis, seed, tol);
    alg.basis = std::move(basis);
    for (const auto& e : alg.idempotents)
        alg.theta_images.push_back(theta(table, e, tol));
    alg.tol = tol;
    alg.table = std::move(table);
    return alg;
}

namespace {

std::vector<Index> support(const ComplexMatrix& indicator) {
    std::vector<Index> s;
    for (Index i = 0; i < indicator.rows(); ++i)
        for (Index j = 0; j < indicator.cols(); ++j)
            if (indicator(i, j) != cd{0.0, 0.0})
                s.push_back(i * indicator.cols() + j);
    return s;
}

// Distance from m to the span of disjoint 01 indicators.
double indicator_span_residual(std::span<const ComplexMatrix> classes, const ComplexMatrix& m) {
    ComplexMatrix r = m;
    for (const auto& a : classes) {
        const double count = a.real().sum();
        const cd coeff = (a.array() * m.array()).sum() / count;
        r -= coeff * a;
    }
    return r.norm();
}

std::optional<std::vector<ComplexMatrix>> partition_by_value(std::span<const ComplexMatrix> basis,
                                                             std::uint64_t seed, const Tolerance& tol) {
    const Index v = basis.front().rows();
    detail::Rng rng(seed);
    ComplexMatrix generic = ComplexMatrix::Zero(v, v);
    for (const auto& b : basis) {
        const double re = rng.normal();
        const double im = rng.normal();
        generic += cd{re, im} * b;
    }
    const double atol = tol.rel() * max_abs(generic);

    std::vector<cd> reps;
    std::vector<ComplexMatrix> classes;
    for (Index i = 0; i < v; ++i)
        for (Index j = 0; j < v; ++j) {
            const cd x = generic(i, j);
            std::size_t k = 0;
            while (k < reps.size() && std::abs(x - reps[k]) > atol)
                ++k;
            if (k == reps.size()) {
                reps.push_back(x);
                classes.push_back(ComplexMatrix::Zero(v, v));
                if (classes.size() > basis.size())
                    return std::nullopt;
            }
            classes[k](i, j) = 1.0;
        }
    if (classes.size() != basis.size())
        return std::nullopt;
    for (const auto& b : basis)
        if (indicator_span_residual(classes, b) > 10.0 * tol.rel() * std::max(1.0, b.norm()))
            return std::nullopt;
    return classes;
}

} // namespace

std::vector<ComplexMatrix> schur_idempotents(std::span<const ComplexMatrix> basis, std::uint64_t seed,
                                             const Tolerance& tol) {
    if (basis.empty())
        throw Error(Errc::input, "schur_idempotents: empty basis");
    constexpr int kAttempts = 5;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        auto classes = partition_by_value(basis, seed + static_cast<std::uint64_t>(attempt), tol);
        if (!classes)
            continue;
        struct Keyed {
            bool has_origin;
            Index valency;
            std::vector<Index> supp;
            ComplexMatrix mat;
        };
        std::vector<Keyed> keyed;
        for (auto& m : *classes) {
            auto s = support(m);
            const bool origin = !s.empty() && s.front() == 0;
            keyed.push_back({origin, static_cast<Index>(s.size()), std::move(s), std::move(m)});
        }
        std::sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
            if (x.has_origin != y.has_origin)
                return x.has_origin;
            if (x.valency != y.valency)
                return x.valency > y.valency;
            return x.supp < y.supp;
        });
        std::vector<ComplexMatrix> out;
        out.reserve(keyed.size());
        for (auto& k : keyed)
            out.push_back(std::move(k.mat));
        return out;
    }
    throw Error(Errc::not_schur_closed, "not Schur-closed: no generic partition reproduces the span");
}

std::optional<ComplexMatrix> contains(const EigenvectorTable& table, const ComplexMatrix& m, const Tolerance& tol) {
    const int v = table.v;
    if (m.rows() != v || m.cols() != v)
        throw Error(Errc::input, "contains: matrix order does not match the table");
    const double mnorm = m.norm();
    ComplexMatrix out(v, v);
    for (int a = 0; a < v; ++a) {
        const ComplexMatrix& ya = table.columns[static_cast<std::size_t>(a)];
        const ComplexMatrix my = m * ya;
        for (int b = 0; b < v; ++b) {
            Index pivot = 0;
            ya.col(b).cwiseAbs().maxCoeff(&pivot);
            const cd lambda = my(pivot, b) / ya(pivot, b);
            const double residual = (my.col(b) - lambda * ya.col(b)).norm();
            if (residual > tol.rel() * mnorm * ya.col(b).norm())
                return std::nullopt;
            out(a, b) = lambda;
        }
    }
    return out;
}

std::optional<ComplexMatrix> contains(const TypeIIMatrix& w, const EigenvectorTable& table, const ComplexMatrix& m,
                                      const Tolerance& tol) {
    if (w.order() != table.v)
        throw Error(Errc::input, "contains: table does not belong to this matrix");
    return contains(table, m, tol);
}

ComplexMatrix theta(const EigenvectorTable& table, const ComplexMatrix& m, const Tolerance& tol) {
    auto t = contains(table, m, tol);
    if (!t)
        throw Error(Errc::not_in_nomura, "not in N(W): some Y_{a,b} is not an eigenvector");
    return *std::move(t);
}

ComplexMatrix theta(const NomuraAlgebra& alg, const ComplexMatrix& m) { return theta(alg.table, m, alg.tol); }

IdentityReport check_theorem_identities(const NomuraAlgebra& alg, const Tolerance& tol) {
    IdentityReport r;
    const double v = alg.v;
    const auto& e = alg.idempotents;
    const auto& th = alg.theta_images;
    auto closure = [&](const ComplexMatrix& x) {
        const double nx = x.norm();
        return nx == 0.0 ? 0.0 : span_residual(alg.basis, x) / nx;
    };
    // Failing theta evaluation counts as an unbounded residual.
    auto theta_or_fail = [&](const ComplexMatrix& x, double& slot, const ComplexMatrix& expected) {
        auto t = contains(alg.table, x, tol);
        slot = std::max(slot, t ? relative(*t, expected) : INFINITY);
    };
    for (std::size_t i = 0; i < e.size(); ++i) {
        r.closure_transpose = std::max(r.closure_transpose, closure(e[i].transpose()));
        theta_or_fail(e[i].transpose(), r.theta_transpose, th[i].transpose());
        for (std::size_t j = 0; j < e.size(); ++j) {
            ++r.pairs;
            const ComplexMatrix prod = e[i] * e[j];
            const ComplexMatrix sch = schur(e[i], e[j]);
            r.closure_product = std::max(r.closure_product, closure(prod));
            r.closure_schur = std::max(r.closure_schur, closure(sch));
            r.commutativity = std::max(r.commutativity, relative(prod, e[j] * e[i]));
            theta_or_fail(prod, r.theta_product, schur(th[i], th[j]));
            theta_or_fail(sch, r.theta_schur, th[i] * th[j] / v);
        }
    }
    r.max_residual = std::max({r.closure_product, r.closure_schur, r.closure_transpose, r.commutativity,
                               r.theta_product, r.theta_schur, r.theta_transpose});
    r.pass = r.max_residual <= tol.rel();
    return r;
}

DualityReport check_formal_duality(const NomuraAlgebra& alg_w, const NomuraAlgebra& alg_wt, const Tolerance& tol) {
    DualityReport r;
    if (alg_w.v != alg_wt.v)
        throw Error(Errc::input, "check_formal_duality: orders differ");
    const double v = alg_w.v;
    const auto& e = alg_w.idempotents;
    const auto& th = alg_w.theta_images;

    for (const auto& t : th)
        r.image_residual = std::max(r.image_residual, span_residual(alg_wt.basis, t) / std::max(1.0, t.norm()));
    r.image_rank = static_cast<int>(orthonormalize(th, tol).size());
    r.onto = r.image_rank == alg_wt.dim && alg_w.dim == alg_wt.dim;

    bool same = alg_w.dim == alg_wt.dim;
    for (const auto& b : alg_w.basis)
        same = same && span_residual(alg_wt.basis, b) <= 10.0 * tol.rel();
    r.same_algebra = same;

    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < e.size(); ++j) {
            auto tp = contains(alg_w.table, e[i] * e[j], tol);
            r.theta_product = std::max(r.theta_product, tp ? relative(*tp, schur(th[i], th[j])) : INFINITY);
            auto ts = contains(alg_w.table, schur(e[i], e[j]), tol);
            r.theta_schur = std::max(r.theta_schur, ts ? relative(*ts, th[i] * th[j] / v) : INFINITY);
        }

    for (std::size_t i = 0; i < e.size(); ++i) {
        auto twice = contains(alg_w.table, th[i], tol);
        r.self_dual.push_back(twice && relative(*twice, v * e[i].transpose()) <= tol.rel());
    }

    r.pass = r.image_residual <= tol.rel() && r.onto && r.theta_product <= tol.rel() && r.theta_schur <= tol.rel();
    return r;
}

} // namespace nomura
