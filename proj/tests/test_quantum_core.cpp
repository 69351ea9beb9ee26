#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qdilemma/channel.hpp"
#include "qdilemma/complex_mat.hpp"
#include "qdilemma/errors.hpp"
#include "qdilemma/game.hpp"
#include "qdilemma/rng.hpp"

using namespace qdilemma;

namespace {

constexpr double kPi = std::numbers::pi;

Mat2 random_mat2(Rng& rng) {
    Mat2 m;
    for (auto& v : m.e) v = cx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return m;
}

Mat4 random_hermitian4(Rng& rng) {
    Mat4 m;
    for (auto& v : m.e) v = cx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return cx{0.5} * (m + adjoint(m));
}

double max_entry_distance(const Mat4& a, const Mat4& b) {
    double d = 0.0;
    for (size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(a.e[i] - b.e[i]));
    return d;
}

cx det4(const Mat4& m) {
    // Laplace expansion via 3x3 minors; fine at fixed size.
    auto minor3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m(r0, c0) * (m(r1, c1) * m(r2, c2) - m(r1, c2) * m(r2, c1)) -
               m(r0, c1) * (m(r1, c0) * m(r2, c2) - m(r1, c2) * m(r2, c0)) +
               m(r0, c2) * (m(r1, c0) * m(r2, c1) - m(r1, c1) * m(r2, c0));
    };
    return m(0, 0) * minor3(1, 2, 3, 1, 2, 3) - m(0, 1) * minor3(1, 2, 3, 0, 2, 3) +
           m(0, 2) * minor3(1, 2, 3, 0, 1, 3) - m(0, 3) * minor3(1, 2, 3, 0, 1, 2);
}

}  // namespace

TEST_CASE("tensor product identity and diagonal cases") {
    const Mat4 i4 = tensor_product(Mat2::identity(), Mat2::identity());
    CHECK(max_entry_distance(i4, Mat4::identity()) == 0.0);

    Mat2 q;
    q(0, 0) = cx{0, 1};
    q(1, 1) = cx{0, -1};
    const Mat4 qq = tensor_product(q, q);
    CHECK(max_entry_distance(qq, Mat4::diagonal(-1, 1, 1, -1)) <= 1e-15);
}

TEST_CASE("tensor product satisfies the mixed-product property") {
    Rng rng(101);
    for (int i = 0; i < 100; ++i) {
        const Mat2 a = random_mat2(rng), b = random_mat2(rng);
        const Mat2 c = random_mat2(rng), d = random_mat2(rng);
        const Mat4 lhs = tensor_product(a, b) * tensor_product(c, d);
        const Mat4 rhs = tensor_product(a * c, b * d);
        CHECK(max_entry_distance(lhs, rhs) <= 1e-12);
    }
}

TEST_CASE("adjoint basics") {
    CHECK(frobenius_distance(adjoint(Mat2::identity()), Mat2::identity()) == 0.0);

    Mat2 c;  // real antisymmetric flip
    c(0, 1) = 1.0;
    c(1, 0) = -1.0;
    const Mat2 ct = adjoint(c);
    CHECK(ct(0, 1) == cx{-1.0});
    CHECK(ct(1, 0) == cx{1.0});

    Rng rng(102);
    for (int i = 0; i < 50; ++i) {
        const Mat2 m = random_mat2(rng);
        CHECK(frobenius_distance(adjoint(adjoint(m)), m) == 0.0);
    }
}

TEST_CASE("strategy unitaries satisfy U^dagger U = I") {
    Rng rng(103);
    for (int i = 0; i < 200; ++i) {
        const Mat2 u = unitary_2p(TwoParamStrategy(rng.uniform(0, kPi), rng.uniform(0, kPi / 2)));
        CHECK(unitary_deviation(u) <= 1e-12);
    }
}

TEST_CASE("trace identities") {
    CHECK(trace(Mat4::identity()) == cx{4.0});

    Rng rng(104);
    for (int i = 0; i < 100; ++i) {
        const Mat2 a = random_mat2(rng), b = random_mat2(rng);
        const cx lhs = trace(tensor_product(a, b));
        const cx rhs = trace(a) * trace(b);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }

    for (int i = 0; i <= 10; ++i) {
        const DensityMatrix4 rho = initial_state(DecoherenceParam::from_mu(i / 10.0));
        CHECK(std::abs(trace(rho.mat()) - cx{1.0}) <= 1e-15);
    }
}

TEST_CASE("hermitian eigenvalues of fixed matrices") {
    const auto ev_id = hermitian_eigenvalues(Mat4::identity());
    for (double v : ev_id) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    // mu = 0: equal mixture of |00><00| and |11><11|.
    const auto ev0 = hermitian_eigenvalues(initial_state(DecoherenceParam::from_mu(0.0)).mat());
    CHECK(ev0[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev0[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev0[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ev0[3] == doctest::Approx(0.5).epsilon(1e-12));

    // mu = 0.5: the 00/11 block diagonalizes to eigenvalues 1/2 +/- mu/2.
    const auto ev5 = hermitian_eigenvalues(initial_state(DecoherenceParam::from_mu(0.5)).mat());
    CHECK(std::abs(ev5[0]) <= 1e-12);
    CHECK(std::abs(ev5[1]) <= 1e-12);
    CHECK(ev5[2] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(ev5[3] == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("hermitian eigenvalues agree with the symmetric-function oracle") {
    // Power sums Tr(H^k), k = 1..3, plus det(H) pin four eigenvalues up to
    // order; computed independently of the Jacobi iteration.
    Rng rng(105);
    for (int i = 0; i < 50; ++i) {
        const Mat4 h = random_hermitian4(rng);
        const auto ev = hermitian_eigenvalues(h);

        double s1 = 0, s2 = 0, s3 = 0, prod = 1;
        for (double v : ev) {
            s1 += v;
            s2 += v * v;
            s3 += v * v * v;
            prod *= v;
        }
        CHECK(s1 == doctest::Approx(trace(h).real()).epsilon(1e-9));
        CHECK(s2 == doctest::Approx(trace(h * h).real()).epsilon(1e-9));
        CHECK(s3 == doctest::Approx(trace(h * h * h).real()).epsilon(1e-9));
        CHECK(prod == doctest::Approx(det4(h).real()).epsilon(1e-8));
        CHECK(std::abs(det4(h).imag()) <= 1e-9);
    }
}

TEST_CASE("hermitian eigenvalue sum matches trace within 1e-9 for channel states") {
    for (int i = 0; i <= 10; ++i) {
        const auto ev = hermitian_eigenvalues(initial_state(DecoherenceParam::from_mu(i / 10.0)).mat());
        CHECK(ev[0] >= -1e-10);
        CHECK(ev[3] <= 1.0 + 1e-10);
        CHECK(ev[0] + ev[1] + ev[2] + ev[3] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("hermitian_eigenvalues rejects a non-Hermitian matrix") {
    Mat4 m = Mat4::identity();
    m(0, 1) = cx{0.5, 0.0};  // no conjugate partner
    CHECK_THROWS_AS(hermitian_eigenvalues(m), NotHermitian);
}

TEST_CASE("frobenius distance") {
    CHECK(frobenius_distance(Mat4::identity(), Mat4::identity()) == 0.0);
    CHECK(frobenius_distance(Mat4::identity(), Mat4::zero()) == doctest::Approx(2.0));

    Rng rng(106);
    for (int i = 0; i < 20; ++i) {
        const Mat4 a = random_hermitian4(rng), b = random_hermitian4(rng);
        CHECK(frobenius_distance(a, b) == frobenius_distance(b, a));
    }
}

TEST_CASE("density matrix validation rejects invariant violations") {
    Mat4 bad_trace = Mat4::diagonal(0.5, 0, 0, 0.6);
    CHECK_THROWS_AS(DensityMatrix4::validated(bad_trace), ValidationFailed);

    Mat4 not_psd = Mat4::diagonal(1.5, 0, 0, -0.5);
    CHECK_THROWS_AS(DensityMatrix4::validated(not_psd), ValidationFailed);

    Mat4 not_hermitian = Mat4::diagonal(0.5, 0, 0, 0.5);
    not_hermitian(0, 3) = cx{0.1, 0.0};
    CHECK_THROWS_AS(DensityMatrix4::validated(not_hermitian), ValidationFailed);
}
