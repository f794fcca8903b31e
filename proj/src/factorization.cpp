#include "nomura/factorization.hpp"

#include <cmath>
#include <string>

#include "nomura/error.hpp"
#include "nomura/schemes.hpp"

namespace nomura {

namespace {

[[noreturn]] void inconsistent(const std::string& detail) {
    throw Error(Errc::inconsistent_relations, "inconsistent relations: " + detail);
}

// Class ids for the relation `related`, numbered by smallest member. The
// relation must be an equivalence with `count` classes of size `size`.
template <class Related>
std::vector<int> classes_of(int v, Related related, int count, int size, const char* name) {
    std::vector<int> ids(static_cast<std::size_t>(v), -1);
    int next = 0;
    for (int a = 0; a < v; ++a) {
        if (ids[static_cast<std::size_t>(a)] >= 0)
            continue;
        for (int b = 0; b < v; ++b)
            if (related(a, b)) {
                if (ids[static_cast<std::size_t>(b)] >= 0)
                    inconsistent(std::string(name) + " is not transitive");
                ids[static_cast<std::size_t>(b)] = next;
            }
        if (ids[static_cast<std::size_t>(a)] != next)
            inconsistent(std::string(name) + " is not reflexive");
        ++next;
    }
    for (int a = 0; a < v; ++a)
        for (int b = 0; b < v; ++b)
            if (related(a, b) != (ids[static_cast<std::size_t>(a)] == ids[static_cast<std::size_t>(b)]))
                inconsistent(std::string(name) + " is not an equivalence relation");
    if (next != count)
        inconsistent(std::string(name) + " has " + std::to_string(next) + " classes, expected " +
                     std::to_string(count));
    std::vector<int> sizes(static_cast<std::size_t>(count), 0);
    for (int id : ids)
        ++sizes[static_cast<std::size_t>(id)];
    for (int s : sizes)
        if (s != size)
            inconsistent(std::string(name) + " has a class of size " + std::to_string(s) + ", expected " +
                         std::to_string(size));
    return ids;
}

ComplexMatrix unpermute_rows(const ComplexMatrix& w, const Permutation& pi) {
    // X with W = P_pi X, i.e. X(i, :) = W(pi[i], :)
    ComplexMatrix x(w.rows(), w.cols());
    for (Index i = 0; i < w.rows(); ++i)
        x.row(i) = w.row(pi[static_cast<std::size_t>(i)]);
    return x;
}

long int_pow(long base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i)
        r *= base;
    return r;
}

} // namespace

BlockRelations block_relations(const TypeIIMatrix& w, const EigenvectorTable& table, int m, int n,
                               const Tolerance& tol) {
    const int v = w.order();
    if (m < 1 || n < 1 || m * n != v)
        throw Error(Errc::input, "block_relations: m * n must equal the order");
    const auto t1 = contains(w, table, kron(identity(n), ones(m)), tol);
    const auto t2 = contains(w, table, kron(ones(n), identity(m)), tol);
    if (!t1 || !t2)
        throw Error(Errc::structure_absent, "structure matrices absent from N(W)");

    const double dm = m;
    const double dn = n;
    BlockRelations r{m, n, {}, {}};
    r.rel1 = classes_of(
        v, [&](int a, int b) { return std::abs((*t1)(a, b) - dm) <= tol.rel() * dm; }, m, n, "~1");
    r.rel2 = classes_of(
        v, [&](int a, int b) { return std::abs((*t2)(a, b) - dn) <= tol.rel() * dn; }, n, m, "~2");

    std::vector<int> meet(static_cast<std::size_t>(m * n), 0);
    for (int a = 0; a < v; ++a)
        ++meet[static_cast<std::size_t>(r.rel2[static_cast<std::size_t>(a)] * m + r.rel1[static_cast<std::size_t>(a)])];
    for (int c : meet)
        if (c != 1)
            inconsistent("a ~1 class and a ~2 class do not meet in exactly one element");
    return r;
}

PermDiag aligning_permutation(const BlockRelations& r) {
    const int v = r.m * r.n;
    if (static_cast<int>(r.rel1.size()) != v || static_cast<int>(r.rel2.size()) != v)
        throw Error(Errc::input, "aligning_permutation: relation sizes do not match m * n");
    Permutation perm(static_cast<std::size_t>(v), -1);
    for (int x = 0; x < v; ++x) {
        const int c1 = r.rel1[static_cast<std::size_t>(x)];
        const int c2 = r.rel2[static_cast<std::size_t>(x)];
        if (c1 < 0 || c1 >= r.m || c2 < 0 || c2 >= r.n)
            inconsistent("class id out of range");
        auto& slot = perm[static_cast<std::size_t>(c2 * r.m + c1)];
        if (slot >= 0)
            inconsistent("a ~1 class and a ~2 class meet twice");
        slot = x;
    }
    return PermDiag::from_perm(std::move(perm));
}

TensorSplit split_tensor(const TypeIIMatrix& wp, int m, int n, const Tolerance& tol) {
    const ComplexMatrix& w = wp.matrix();
    if (m < 1 || n < 1 || m * n != wp.order())
        throw Error(Errc::input, "split_tensor: m * n must equal the order");
    const ComplexMatrix v = w.topLeftCorner(m, m);
    ComplexMatrix u(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            u(i, j) = w(i * m, j * m);

    const BlockView blocks(w, m);
    double residual = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            residual = std::max(residual, max_abs(blocks.block(i, j) - u(i, j) * v));
    if (residual > tol.rel() * max_abs(w))
        throw Error(Errc::not_tensor_product,
                    "not a tensor product at tolerance (block residual " + std::to_string(residual) + ")", residual);
    return {verify_type_ii(u, tol), verify_type_ii(v, tol), residual};
}

SingleFactorization factor_once(const TypeIIMatrix& w, int m, int n, const Tolerance& tol,
                                const std::optional<Permutation>& relabel) {
    const int v = w.order();
    if (relabel && (static_cast<int>(relabel->size()) != v || !is_permutation(*relabel)))
        throw Error(Errc::input, "factor_once: relabel is not a permutation of the order");
    const TypeIIMatrix x = relabel ? verify_type_ii(unpermute_rows(w.matrix(), *relabel), tol) : w;

    const EigenvectorTable table = eigenvector_table(x, tol);
    const BlockRelations rel = block_relations(x, table, m, n, tol);
    const PermDiag p = aligning_permutation(rel);
    const TypeIIMatrix xp = verify_type_ii(apply_equivalence(x.matrix(), PermDiag::identity(v), p), tol);
    const Equivalent normal = normalize(xp, tol);
    TensorSplit split = split_tensor(normal.matrix, m, n, tol);

    // normal = D (X P) D'  =>  X = D^{-1} (U (x) V) (D'^{-1} P^{-1})
    PermDiag left = PermDiag::from_diag(normal.left.diag.cwiseInverse());
    PermDiag right{inverse_permutation(p.perm), normal.right.diag.cwiseInverse()};
    if (relabel)
        left = compose_left(PermDiag::from_perm(*relabel), left);

    const double residual =
        max_abs(w.matrix() - apply_equivalence(kron(split.outer.matrix(), split.inner.matrix()), left, right));
    if (residual > tol.rel() * max_abs(w.matrix()))
        throw Error(Errc::not_tensor_product,
                    "reconstruction residual " + std::to_string(residual) + " exceeds tolerance", residual);
    return {std::move(split.outer), std::move(split.inner), std::move(left), std::move(right), residual};
}

StructureMatrices recover_structure_matrices(const TypeIIMatrix& w, const EigenvectorTable& table, int q, int n,
                                             const Tolerance& tol) {
    if (q < 2 || n < 1 || int_pow(q, n) != w.order())
        throw Error(Errc::input, "recover_structure_matrices: order must equal q^n");
    const ComplexMatrix a = hamming_adjacency(n, q);
    if (!contains(w, table, a, tol))
        throw Error(Errc::hamming_absent, "Hamming adjacency absent from N(W)");
    const Index rest = int_pow(q, n - 1);
    StructureMatrices s;
    s.iqj = kron(identity(q), ones(rest));
    s.jqi = a - schur(a, s.iqj) + identity(w.order());
    if (!contains(w, table, s.iqj, tol) || !contains(w, table, s.jqi, tol))
        throw Error(Errc::structure_absent, "structure matrices absent from N(W)");
    return s;
}

ComplexMatrix kron_all(const std::vector<TypeIIMatrix>& factors) {
    ComplexMatrix acc = ComplexMatrix::Ones(1, 1);
    for (const auto& f : factors)
        acc = kron(acc, f.matrix());
    return acc;
}

namespace {

FactorizationResult factor_levels(const TypeIIMatrix& x, int q, int k, int depth, const Tolerance& tol) {
    if (k == 1)
        return {{x}, PermDiag::identity(x.order()), PermDiag::identity(x.order()), 0.0};
    try {
        const EigenvectorTable table = eigenvector_table(x, tol);
        recover_structure_matrices(x, table, q, k, tol);
        SingleFactorization once = factor_once(x, static_cast<int>(int_pow(q, k - 1)), q, tol);
        FactorizationResult sub = factor_levels(once.inner, q, k - 1, depth + 1, tol);

        // U (x) (L' F R') = (I (x) L') (U (x) F) (I (x) R')
        FactorizationResult out{{once.outer}, compose_left(once.left, kron_identity(q, sub.left)),
                                compose_right(kron_identity(q, sub.right), once.right), 0.0};
        for (auto& f : sub.factors)
            out.factors.push_back(std::move(f));
        return out;
    } catch (const Error& e) {
        const std::string what = e.what();
        if (what.rfind("depth ", 0) == 0)
            throw;
        throw Error(e.code(), "depth " + std::to_string(depth) + ": " + what, e.residual(), e.axiom());
    }
}

} // namespace

FactorizationResult factor_full(const TypeIIMatrix& w, int q, int n, const Tolerance& tol,
                                const std::optional<Permutation>& relabel) {
    if (q < 2 || n < 1 || int_pow(q, n) != w.order())
        throw Error(Errc::input, "factor_full: order must equal q^n");
    if (relabel && (static_cast<int>(relabel->size()) != w.order() || !is_permutation(*relabel)))
        throw Error(Errc::input, "factor_full: relabel is not a permutation of the order");
    const TypeIIMatrix x = relabel ? verify_type_ii(unpermute_rows(w.matrix(), *relabel), tol) : w;

    {
        const EigenvectorTable table = eigenvector_table(x, tol);
        if (!contains(x, table, hamming_adjacency(n, q), tol)) {
            if (relabel)
                throw Error(Errc::hamming_absent, "Hamming adjacency absent from N(W) under the given relabeling");
            throw Error(Errc::relabel_required,
                        "canonical Hamming adjacency is not in N(W); supply the vertex relabeling");
        }
    }

    FactorizationResult out = factor_levels(x, q, n, 0, tol);
    if (relabel)
        out.left = compose_left(PermDiag::from_perm(*relabel), out.left);
    out.residual = max_abs(w.matrix() - apply_equivalence(kron_all(out.factors), out.left, out.right));
    if (out.residual > tol.rel() * max_abs(w.matrix()))
        throw Error(Errc::not_tensor_product,
                    "factorization residual " + std::to_string(out.residual) + " exceeds tolerance", out.residual);
    return out;
}

} // namespace nomura
