#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nomura/error.hpp"
#include "nomura/matrix.hpp"

using namespace nomura;
using nomura::testing::f3;
using nomura::testing::kOmega;
using nomura::testing::random_matrix;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no nomura::Error thrown");
    return Errc::input;
}

ComplexMatrix rm(std::initializer_list<std::initializer_list<double>> rows) {
    ComplexMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
    Index i = 0;
    for (auto r : rows) {
        Index j = 0;
        for (double x : r)
            m(i, j++) = x;
        ++i;
    }
    return m;
}

} // namespace

TEST_CASE("tolerance rejects values outside (0, 1)") {
    CHECK_NOTHROW(Tolerance(1e-8));
    CHECK_THROWS_AS(Tolerance(0.0), Error);
    CHECK_THROWS_AS(Tolerance(1.0), Error);
    CHECK_THROWS_AS(Tolerance(-1e-3), Error);
    CHECK(Tolerance{}.rel() == 1e-8);
}

TEST_CASE("kron of identities and a block pattern") {
    CHECK(kron(identity(2), identity(3)) == identity(6));

    const ComplexMatrix swap = rm({{0, 1}, {1, 0}});
    const ComplexMatrix k = kron(swap, ones(2));
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j)
            CHECK(k(i, j) == cd((i / 2 != j / 2) ? 1.0 : 0.0));

    const ComplexMatrix ff = kron(f3(), f3());
    CHECK(std::abs(ff(4, 4) - kOmega * kOmega) < 1e-15);
}

TEST_CASE("kron is associative and obeys the mixed product rule") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix a = random_matrix(rng, 2, 2);
        const ComplexMatrix b = random_matrix(rng, 3, 3);
        const ComplexMatrix c = random_matrix(rng, 2, 2);
        const ComplexMatrix d = random_matrix(rng, 3, 3);
        CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) < 1e-13);
        CHECK(max_abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)) < 1e-10);
    }
}

TEST_CASE("schur product") {
    std::mt19937_64 rng(5);
    const ComplexMatrix m = random_matrix(rng, 3, 3);
    CHECK(schur(ones(3), m) == m);
    CHECK(max_abs(schur(identity(3), ones(3) - identity(3))) == 0.0);
    CHECK(std::abs(schur(f3(), f3())(1, 2) - kOmega) < 1e-15);

    const ComplexMatrix a = random_matrix(rng, 4, 4);
    const ComplexMatrix b = random_matrix(rng, 4, 4);
    const ComplexMatrix c = random_matrix(rng, 4, 4);
    CHECK(schur(a, b) == schur(b, a));
    CHECK(max_abs(schur(schur(a, b), c) - schur(a, schur(b, c))) < 1e-13);

    CHECK(code_of([] { schur(identity(2), identity(3)); }) == Errc::input);
}

TEST_CASE("entrywise inverse") {
    CHECK(entrywise_inverse(ones(3)) == ones(3));
    CHECK(max_abs(entrywise_inverse(f3()) - f3().conjugate()) < 1e-15);
    CHECK(code_of([] { entrywise_inverse(identity(2)); }) == Errc::zero_entry);

    // unit-modulus entries invert to their conjugates
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    ComplexMatrix u(4, 4);
    for (Index i = 0; i < 4; ++i)
        for (Index j = 0; j < 4; ++j)
            u(i, j) = std::polar(1.0, phase(rng));
    CHECK(max_abs(entrywise_inverse(u) - u.conjugate()) < 1e-12);
}

TEST_CASE("nullspace examples") {
    CHECK(nullspace(identity(3)).empty());

    const auto ns = nullspace(ones(2));
    REQUIRE(ns.size() == 1);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(ns[0](0) - r) < 1e-14);
    CHECK(std::abs(ns[0](1) + r) < 1e-14);
}

TEST_CASE("nullspace of random rank-deficient matrices") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const Index rank = 2 + trial % 3;
        const ComplexMatrix a = random_matrix(rng, 7, rank) * random_matrix(rng, rank, 6);
        const auto ns = nullspace(a);
        REQUIRE(static_cast<Index>(ns.size()) == 6 - rank);
        const double smax = Eigen::JacobiSVD<ComplexMatrix>(a).singularValues()(0);
        for (std::size_t i = 0; i < ns.size(); ++i) {
            CHECK((a * ns[i]).norm() <= 10 * 1e-8 * smax);
            for (std::size_t j = 0; j < ns.size(); ++j)
                CHECK(std::abs(ns[i].dot(ns[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
            // phase convention
            Index k = 0;
            ns[i].cwiseAbs().maxCoeff(&k);
            CHECK(std::abs(ns[i](k).imag()) < 1e-14);
            CHECK(ns[i](k).real() > 0.0);
        }
    }
}

TEST_CASE("permutation helpers follow P e_i = e_perm[i]") {
    const Permutation p{2, 0, 1};
    const ComplexMatrix pm = permutation_matrix(p);
    for (int i = 0; i < 3; ++i) {
        ComplexVector e = ComplexVector::Zero(3);
        e(i) = 1.0;
        ComplexVector target = ComplexVector::Zero(3);
        target(p[static_cast<std::size_t>(i)]) = 1.0;
        CHECK(pm * e == target);
    }
    CHECK(permutation_matrix(inverse_permutation(p)) == pm.transpose());
    const Permutation q{1, 2, 0};
    CHECK(permutation_matrix(compose_permutations(p, q)) == pm * permutation_matrix(q));
    CHECK(is_permutation(p));
    CHECK_FALSE(is_permutation(std::vector<int>{0, 0, 1}));
    CHECK_FALSE(is_permutation(std::vector<int>{0, 3, 1}));
}

TEST_CASE("PermDiag algebra against dense matrices") {
    std::mt19937_64 rng(23);
    auto random_pd = [&](int n) {
        Permutation p = identity_permutation(n);
        std::shuffle(p.begin(), p.end(), rng);
        ComplexVector d = random_matrix(rng, n, 1);
        return PermDiag{p, d};
    };
    for (int trial = 0; trial < 5; ++trial) {
        const PermDiag a = random_pd(4);
        const PermDiag b = random_pd(4);
        const ComplexMatrix w = random_matrix(rng, 4, 4);
        CHECK(max_abs(apply_equivalence(w, a, b) - left_matrix(a) * w * right_matrix(b)) < 1e-12);
        CHECK(max_abs(left_matrix(inverse_left(a)) * left_matrix(a) - identity(4)) < 1e-12);
        CHECK(max_abs(right_matrix(b) * right_matrix(inverse_right(b)) - identity(4)) < 1e-12);
        CHECK(max_abs(left_matrix(compose_left(a, b)) - left_matrix(a) * left_matrix(b)) < 1e-12);
        CHECK(max_abs(right_matrix(compose_right(a, b)) - right_matrix(a) * right_matrix(b)) < 1e-12);
        CHECK(max_abs(left_matrix(kron_identity(3, a)) - kron(identity(3), left_matrix(a))) < 1e-12);
        CHECK(max_abs(right_matrix(kron_identity(3, b)) - kron(identity(3), right_matrix(b))) < 1e-12);
        // round trip through the inverses
        const ComplexMatrix back = apply_equivalence(apply_equivalence(w, a, b), inverse_left(a), inverse_right(b));
        CHECK(max_abs(back - w) < 1e-10);
    }
}

TEST_CASE("apply_equivalence with trivial witnesses") {
    const ComplexMatrix w = f3();
    CHECK(apply_equivalence(w, PermDiag::identity(3), PermDiag::identity(3)) == w);
    const PermDiag scale = PermDiag::from_diag(ComplexVector::Constant(3, cd(0.0, 2.0)));
    CHECK(max_abs(apply_equivalence(w, scale, PermDiag::identity(3)) - cd(0.0, 2.0) * w) < 1e-15);
    CHECK(code_of([] { validate(PermDiag{{0, 0}, ComplexVector::Ones(2)}); }) == Errc::input);
    CHECK(code_of([] { validate(PermDiag{{1, 0}, ComplexVector::Zero(2)}); }) == Errc::input);
}

TEST_CASE("conjugate_by matches P m P^T") {
    std::mt19937_64 rng(2);
    const ComplexMatrix m = random_matrix(rng, 4, 4);
    const Permutation p{3, 1, 0, 2};
    const ComplexMatrix pm = permutation_matrix(p);
    CHECK(max_abs(conjugate_by(m, p) - pm * m * pm.transpose()) == 0.0);
}

TEST_CASE("orthonormalize and span_residual") {
    const std::vector<ComplexMatrix> mats{identity(3), ones(3), ones(3) - identity(3)};
    const auto basis = orthonormalize(mats);
    REQUIRE(basis.size() == 2);
    for (const auto& b : basis)
        CHECK(std::abs(b.norm() - 1.0) < 1e-12);
    CHECK(std::abs((basis[0].adjoint() * basis[1]).trace()) < 1e-12);
    CHECK(span_residual(basis, 3.0 * identity(3) - ones(3)) < 1e-12);
    const ComplexMatrix c = nomura::testing::shift(3, 1);
    // C projects to (J - I)/2, leaving six entries of modulus 1/2
    CHECK(std::abs(span_residual(basis, c) - std::sqrt(1.5)) < 1e-12);
}

TEST_CASE("validate_matrix rejects empty and non-finite input") {
    CHECK(code_of([] { validate_matrix(ComplexMatrix(0, 0)); }) == Errc::input);
    ComplexMatrix bad = ones(2);
    bad(1, 1) = cd(std::nan(""), 0.0);
    CHECK(code_of([&] { validate_matrix(bad); }) == Errc::input);
    CHECK(is_zero_one(identity(3), 1e-12));
    CHECK_FALSE(is_zero_one(2.0 * identity(3), 1e-12));
}
