#include <doctest.h>

#include <algorithm>
#include <array>
#include <map>

#include "helpers.hpp"
#include "nomura/error.hpp"
#include "nomura/schemes.hpp"

using namespace nomura;
using nomura::testing::hamming_distance;
using nomura::testing::shift;

namespace {

int axiom_of(std::vector<ComplexMatrix> classes) {
    try {
        verify_scheme(std::move(classes));
    } catch (const Error& e) {
        if (e.code() == Errc::scheme_axiom)
            return e.axiom();
        return -1;
    }
    return 0;
}

// Distance-k graph of H(n, q) straight from the word metric.
ComplexMatrix distance_graph(int n, int q, int k) {
    int v = 1;
    for (int i = 0; i < n; ++i)
        v *= q;
    ComplexMatrix a = ComplexMatrix::Zero(v, v);
    for (int x = 0; x < v; ++x)
        for (int y = 0; y < v; ++y)
            if (hamming_distance(x, y, q, n) == k)
                a(x, y) = 1.0;
    return a;
}

// Permutation of word indices that swaps coordinates s and t (0 = last digit).
Permutation swap_coordinates(int n, int q, int s, int t) {
    int v = 1;
    for (int i = 0; i < n; ++i)
        v *= q;
    Permutation p(static_cast<std::size_t>(v));
    for (int x = 0; x < v; ++x) {
        std::vector<int> digits(static_cast<std::size_t>(n));
        int r = x;
        for (int k = 0; k < n; ++k, r /= q)
            digits[static_cast<std::size_t>(k)] = r % q;
        std::swap(digits[static_cast<std::size_t>(s)], digits[static_cast<std::size_t>(t)]);
        int y = 0;
        for (int k = n - 1; k >= 0; --k)
            y = y * q + digits[static_cast<std::size_t>(k)];
        p[static_cast<std::size_t>(x)] = y;
    }
    return p;
}

} // namespace

TEST_CASE("verify_scheme accepts standard schemes") {
    CHECK(verify_scheme({identity(4), ones(4) - identity(4)}).d() == 1);
    CHECK(verify_scheme({identity(3), shift(3, 1), shift(3, 2)}).d() == 2);
    const ComplexMatrix a2 = hamming_adjacency(2, 3);
    CHECK(verify_scheme({identity(9), a2, ones(9) - identity(9) - a2}).d() == 2);
    CHECK(verify_scheme({ComplexMatrix::Ones(1, 1)}).d() == 0);
}

TEST_CASE("verify_scheme reports the failing axiom") {
    CHECK(axiom_of({ones(3)}) == 1);
    CHECK(axiom_of({identity(2)}) == 2);
    // a directed 4-cycle and its complement: C^T = C^3 is not a class
    CHECK(axiom_of({identity(4), shift(4, 1), shift(4, 2) + shift(4, 3)}) == 3);

    // strict upper and lower triangles: closed under transpose but U^2 leaves the span
    ComplexMatrix u = ComplexMatrix::Zero(3, 3);
    u(0, 1) = u(0, 2) = u(1, 2) = 1.0;
    CHECK(axiom_of({identity(3), u, ComplexMatrix(u.transpose())}) == 4);

    // the regular action of S3 is a non-commutative coherent configuration
    std::vector<std::array<int, 3>> g;
    std::array<int, 3> p{0, 1, 2};
    do
        g.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    auto index_of = [&](const std::array<int, 3>& x) {
        return static_cast<int>(std::find(g.begin(), g.end(), x) - g.begin());
    };
    auto mult = [](const std::array<int, 3>& x, const std::array<int, 3>& y) {
        return std::array<int, 3>{x[static_cast<std::size_t>(y[0])], x[static_cast<std::size_t>(y[1])],
                                  x[static_cast<std::size_t>(y[2])]};
    };
    std::vector<ComplexMatrix> classes;
    for (const auto& h : g) {
        ComplexMatrix a = ComplexMatrix::Zero(6, 6);
        for (int x = 0; x < 6; ++x)
            a(x, index_of(mult(g[static_cast<std::size_t>(x)], h))) = 1.0;
        classes.push_back(a);
    }
    CHECK(axiom_of(classes) == 5);

    CHECK(axiom_of({identity(2), 2.0 * (ones(2) - identity(2))}) == -1);
    CHECK(axiom_of({identity(2), ones(3)}) == -1);
}

TEST_CASE("tensor, trivial and cyclic schemes") {
    const AssociationScheme t = tensor_scheme(trivial_scheme(2), cyclic_scheme(3));
    REQUIRE(t.classes.size() == 6);
    CHECK(t.classes[0] == identity(6));
    CHECK(t.classes[1] == kron(identity(2), shift(3, 1)));
    CHECK(t.classes[3] == kron(ones(2) - identity(2), identity(3)));
    CHECK(trivial_scheme(1).d() == 0);
    CHECK(cyclic_scheme(4).classes[1] == shift(4, 1));
}

TEST_CASE("Hamming adjacency against the word metric") {
    for (int q = 2; q <= 4; ++q)
        for (int n = 1; n <= 3; ++n)
            CHECK(hamming_adjacency(n, q) == distance_graph(n, q, 1));
    CHECK(hamming_adjacency(1, 3) == ones(3) - identity(3));
    ComplexMatrix cycle = ComplexMatrix::Zero(4, 4);
    cycle(0, 1) = cycle(1, 0) = cycle(0, 2) = cycle(2, 0) = cycle(1, 3) = cycle(3, 1) = cycle(2, 3) = cycle(3, 2) = 1.0;
    CHECK(hamming_adjacency(2, 2) == cycle);
    CHECK(hamming_adjacency(2, 3).real().rowwise().sum() == Eigen::VectorXd::Constant(9, 4.0));

    std::mt19937_64 rng(4);
    const ComplexMatrix u = nomura::testing::random_matrix(rng, 64, 1);
    CHECK(max_abs(apply_hamming_adjacency(3, 4, u) - hamming_adjacency(3, 4) * u) < 1e-12);

    CHECK_THROWS_AS(hamming_adjacency(0, 3), Error);
    try {
        hamming_adjacency(13, 2);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::size_guard);
    }
}

TEST_CASE("generalized Hamming schemes") {
    const AssociationScheme triv = trivial_scheme(3);
    const AssociationScheme h2 = generalized_hamming(triv, 2);
    REQUIRE(h2.classes.size() == 3);
    CHECK(h2.classes[0] == identity(9));
    CHECK(h2.classes[1] == hamming_adjacency(2, 3));
    CHECK(h2.classes[2] == distance_graph(2, 3, 2));

    CHECK(generalized_hamming(triv, 1).classes == triv.classes);

    // one class per multiset: C(d + n, n)
    const AssociationScheme z3 = cyclic_scheme(3);
    CHECK(generalized_hamming(z3, 2).classes.size() == 6);
    CHECK(generalized_hamming(z3, 3).classes.size() == 10);
    CHECK(generalized_hamming(cyclic_scheme(4), 2).classes.size() == 10);

    // classes with a single non-identity index sum to A(n)
    for (int n = 1; n <= 3; ++n) {
        const AssociationScheme h = generalized_hamming(z3, n);
        ComplexMatrix sum = ComplexMatrix::Zero(h.v, h.v);
        for (std::size_t k = 1; k <= 2; ++k)
            sum += h.classes[k];
        CHECK(sum == hamming_adjacency(n, 3));
    }

    CHECK_THROWS_AS(generalized_hamming(z3, 0), Error);
    try {
        generalized_hamming(trivial_scheme(2), 11);
        FAIL("expected a size guard");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::size_guard);
    }
}

TEST_CASE("generalized Hamming classes are invariant under coordinate swaps") {
    const AssociationScheme z3 = cyclic_scheme(3);
    for (int n = 2; n <= 3; ++n) {
        const AssociationScheme h = generalized_hamming(z3, n);
        for (int s = 0; s < n; ++s)
            for (int t = s + 1; t < n; ++t) {
                const Permutation p = swap_coordinates(n, 3, s, t);
                for (const auto& c : h.classes)
                    CHECK(conjugate_by(c, p) == c);
            }
    }
}

TEST_CASE("Hamming spectra") {
    const HammingSpectrum s23 = hamming_spectrum(2, 3);
    CHECK(s23.eigenvalues == std::vector<int>{4, 1, -2});
    CHECK(s23.multiplicities == std::vector<long>{1, 4, 4});
    CHECK(s23.eigen_residual < 1e-12);

    const HammingSpectrum s33 = hamming_spectrum(3, 3);
    CHECK(s33.eigenvalues == std::vector<int>{6, 3, 0, -3});
    CHECK(s33.multiplicities == std::vector<long>{1, 6, 12, 8});

    for (int q = 2; q <= 4; ++q)
        for (int n = 1; n <= 3; ++n) {
            const HammingSpectrum s = hamming_spectrum(n, q);
            const ComplexMatrix a = hamming_adjacency(n, q);
            long total = 0;
            long trace = 0;
            for (int h = 0; h <= n; ++h) {
                total += s.multiplicities[static_cast<std::size_t>(h)];
                trace += s.multiplicities[static_cast<std::size_t>(h)] * s.eigenvalues[static_cast<std::size_t>(h)];
                const ComplexMatrix& b = s.eigenbasis[static_cast<std::size_t>(h)];
                CHECK(b.cols() == s.multiplicities[static_cast<std::size_t>(h)]);
                CHECK(max_abs(a * b - s.eigenvalues[static_cast<std::size_t>(h)] * b) < 1e-10);
                CHECK(max_abs(b.adjoint() * b - identity(b.cols())) < 1e-10);
                for (int g = 0; g < h; ++g)
                    CHECK(max_abs(s.eigenbasis[static_cast<std::size_t>(g)].adjoint() * b) < 1e-10);
            }
            CHECK(total == a.rows());
            CHECK(trace == 0);

            // dense eigen-solver oracle: cluster the spectrum of A(n)
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a);
            std::map<long, long> counts;
            for (Index k = 0; k < eig.eigenvalues().size(); ++k)
                ++counts[std::lround(eig.eigenvalues()(k))];
            for (int h = 0; h <= n; ++h)
                CHECK(counts[s.eigenvalues[static_cast<std::size_t>(h)]] == s.multiplicities[static_cast<std::size_t>(h)]);
        }

    // V_0 is spanned by the all-ones vector
    const ComplexMatrix v0 = s23.eigenbasis[0];
    CHECK(max_abs(v0 - ComplexVector::Constant(9, 1.0 / 3.0)) < 1e-14);

    const HammingSpectrum one = hamming_spectrum(0, 3);
    CHECK(one.eigenvalues == std::vector<int>{0});
    CHECK(one.multiplicities == std::vector<long>{1});

    CHECK_THROWS_AS(hamming_spectrum(-1, 3), Error);
    CHECK_THROWS_AS(hamming_spectrum(2, 1), Error);
    try {
        hamming_spectrum(13, 2);
        FAIL("expected a size guard");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::size_guard);
    }
}

TEST_CASE("eigenvector recursion") {
    const RecursionReport r = check_eigenvector_recursion(hamming_spectrum(2, 3));
    CHECK(r.pass);
    CHECK(r.vectors_checked == 8);
    CHECK(r.empty_target_read_as_zero);
    CHECK(r.v1_reconstruction_residual < 1e-12);
    CHECK(r.v1_coefficient_sum < 1e-12);

    const RecursionReport r1 = check_eigenvector_recursion(hamming_spectrum(1, 4));
    CHECK(r1.pass);
    CHECK(r1.vectors_checked == 3);

    for (int q = 2; q <= 4; ++q)
        for (int n = 1; n <= 4; ++n)
            CHECK(check_eigenvector_recursion(hamming_spectrum(n, q)).pass);

    CHECK_THROWS_AS(check_eigenvector_recursion(hamming_spectrum(0, 3)), Error);
}

TEST_CASE("scheme membership and equality") {
    const AssociationScheme h = generalized_hamming(cyclic_scheme(3), 2);
    CHECK(scheme_membership(h, ones(9)));
    CHECK(scheme_membership(h, hamming_adjacency(2, 3)));
    CHECK(scheme_membership(generalized_hamming(trivial_scheme(3), 2), hamming_adjacency(2, 3)));
    const ComplexMatrix a1 = kron(shift(3, 1), identity(3));
    CHECK_FALSE(scheme_membership(h, a1));
    CHECK(scheme_span_residual(h, a1) > 0.1);
    CHECK_THROWS_AS(scheme_span_residual(h, identity(3)), Error);

    AssociationScheme reordered = h;
    std::reverse(reordered.classes.begin() + 1, reordered.classes.end());
    CHECK(schemes_equal(h, reordered));
    CHECK_FALSE(schemes_equal(trivial_scheme(3), cyclic_scheme(3)));
    CHECK_FALSE(schemes_equal(trivial_scheme(3), trivial_scheme(4)));
}

TEST_CASE("block views") {
    ComplexVector u(6);
    u << 0.0, 1.0, 2.0, 3.0, 4.0, 5.0;
    const BlockView bu(u, 2);
    CHECK(bu.count() == 3);
    CHECK(bu.block_len() == 2);
    CHECK(bu.segment(1)(0) == cd(2.0));
    CHECK(bu.segment(2)(1) == cd(5.0));

    const ComplexMatrix w = kron(nomura::testing::f3(), ones(2));
    const BlockView bw(w, 2);
    CHECK(bw.block(1, 2) == nomura::testing::f3()(1, 2) * ones(2));
    CHECK_THROWS_AS(BlockView(u, 4), Error);
}
