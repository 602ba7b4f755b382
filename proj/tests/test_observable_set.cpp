#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qur/observable_set.hpp"

using namespace qur;

namespace {

// Deterministic direction sampler for the property sweeps.
struct DirGen {
    std::mt19937_64 eng{12345};
    std::normal_distribution<double> gauss{0.0, 1.0};

    Vec3 operator()() {
        while (true) {
            const Vec3 v(gauss(eng), gauss(eng), gauss(eng));
            if (v.norm() > 1e-6) return v;
        }
    }
};

std::vector<Vec3> tetrahedron_axes() {
    const double s = 1.0 / std::sqrt(3.0);
    return {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
}

}  // namespace

TEST_CASE("build_set validates its input") {
    CHECK_THROWS_AS(build_set({}), DimensionMismatch);
    CHECK_THROWS_AS(build_set({Vec3(1, 0, 0), Vec3(0, 0, 0)}), ZeroDirection);
}

TEST_CASE("orthonormal pair: pseudoinverse is the transpose, coeffs the identity") {
    const ObservableSet S = build_set({Vec3(1, 0, 0), Vec3(0, 1, 0)});
    CHECK(S.span_rank == 2);
    CHECK((S.pseudoinverse - S.matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((S.coeffs - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("parallel pair collapses to span rank one") {
    const ObservableSet S = build_set({Vec3(0, 0, 1), Vec3(0, 0, 2)});
    CHECK(S.span_rank == 1);
    // both rows normalize to the same axis, so every coefficient is 1/4
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(S.coeffs(i, j) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("tetrahedron axes span all of R^3 with the symmetric coefficient matrix") {
    const ObservableSet S = build_set(tetrahedron_axes());
    CHECK(S.span_rank == 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double want = (i == j) ? 9.0 / 16.0 : -3.0 / 16.0;
            CHECK(S.coeffs(i, j) == doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("Penrose identities hold across random sets of every size") {
    DirGen gen;
    for (int n = 1; n <= 6; ++n) {
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<Vec3> axes;
            // bias some reps toward degenerate spans by reusing directions
            for (int i = 0; i < n; ++i)
                axes.push_back((rep % 3 == 1 && i > 0) ? axes[0] : gen());
            const ObservableSet S = build_set(axes);
            const auto& M = S.matrix;
            const auto& P = S.pseudoinverse;
            CHECK((M * P * M - M).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK((P * M * P - P).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK(((M * P).transpose() - M * P).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK(((P * M).transpose() - P * M).cwiseAbs().maxCoeff() <= 1e-10);
            CHECK((S.coeffs - P.transpose() * P).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("full-row-rank pseudoinverse matches the normal-equation formula") {
    DirGen gen;
    for (int rep = 0; rep < 100; ++rep) {
        const std::vector<Vec3> axes = {gen(), gen()};
        const ObservableSet S = build_set(axes);
        if (S.span_rank < 2) continue;
        const Eigen::MatrixXd direct =
            S.matrix.transpose() * (S.matrix * S.matrix.transpose()).inverse();
        CHECK((S.pseudoinverse - direct).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("projection onto the span") {
    const ObservableSet S = build_set({Vec3(1, 0, 0), Vec3(0, 1, 0)});
    const Vec3 p = project_onto_span(S, Vec3(0.3, 0.4, 0.5));
    CHECK(p.isApprox(Vec3(0.3, 0.4, 0.0), 1e-12));
}

TEST_CASE("projection never increases the norm and fixes in-span vectors") {
    DirGen gen;
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 1 + rep % 4;
        std::vector<Vec3> axes;
        for (int i = 0; i < n; ++i) axes.push_back(gen());
        const ObservableSet S = build_set(axes);
        const Vec3 r = 0.9 * gen().normalized();
        const Vec3 p = project_onto_span(S, r);
        CHECK(p.norm() <= r.norm() + 1e-12);
        // projecting twice changes nothing
        CHECK((project_onto_span(S, p) - p).norm() <= 1e-12);
        if (S.span_rank == 3) CHECK((p - r).norm() <= 1e-10);
    }
}

TEST_CASE("expectations_of is the matrix action") {
    const ObservableSet S = build_set({Vec3(1, 0, 0), Vec3(1, 1, 0)});
    const QubitState rho = make_state({0.6, 0.0, 0.0});
    const ExpectationVector u = expectations_of(S, rho);
    REQUIRE(u.size() == 2);
    CHECK(u(0) == doctest::Approx(0.6));
    CHECK(u(1) == doctest::Approx(0.6 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("reconstruct_state on the tetrahedron example") {
    const ObservableSet S = build_set(tetrahedron_axes());
    ExpectationVector u(4);
    u << 1.0, -1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0;
    const QubitState rho = reconstruct_state(S, u);
    CHECK(rho.r.isApprox(Vec3(1, 1, 1) / std::sqrt(3.0), 1e-10));
    ExpectationVector bad(3);
    bad << 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(reconstruct_state(S, bad), DimensionMismatch);
}

TEST_CASE("reconstruct_state round-trips expectations of random states") {
    DirGen gen;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 1 + rep % 5;
        std::vector<Vec3> axes;
        for (int i = 0; i < n; ++i) axes.push_back(gen());
        const ObservableSet S = build_set(axes);
        const QubitState rho = make_state(std::cbrt(unif(gen.eng)) * gen().normalized());
        const ExpectationVector u = expectations_of(S, rho);
        const QubitState back = reconstruct_state(S, u);
        CHECK((expectations_of(S, back) - u).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(back.r.norm() <= rho.r.norm() + 1e-9);
    }
}

TEST_CASE("reconstruct_state rejects unreachable tuples") {
    const ObservableSet S = build_set({Vec3(1, 0, 0), Vec3(0, 1, 0)});
    ExpectationVector u(2);
    u << 0.9, 0.9;  // |M+ u| = sqrt(1.62) > 1
    CHECK_THROWS_AS(reconstruct_state(S, u), NotRealizable);
}

TEST_CASE("realizable on the worked examples") {
    const ObservableSet S = build_set({Vec3(1, 0, 0), Vec3(0, 1, 0)});
    ExpectationVector u(2);
    u << 0.6, 0.8;
    CHECK(realizable(S, u, 1.0));
    u << 0.8, 0.8;
    CHECK_FALSE(realizable(S, u, 1.0));
    u << 0.6, 0.8;
    CHECK_FALSE(realizable(S, u, 0.9));

    const ObservableSet T = build_set(tetrahedron_axes());
    ExpectationVector v(4);
    v << 1.0, 1.0, 1.0, 1.0;  // the axes sum to zero, so equal expectations are inconsistent
    CHECK_FALSE(realizable(T, v, 1.0));
    v << 1.0, -1.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0;
    CHECK(realizable(T, v, 1.0));
    CHECK_THROWS_AS(realizable(T, v, 1.5), DomainError);
    CHECK_THROWS_AS(realizable(T, v, -0.1), DomainError);
}

TEST_CASE("every expectation tuple of an actual state is realizable at its radius") {
    DirGen gen;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 1 + rep % 6;
        std::vector<Vec3> axes;
        for (int i = 0; i < n; ++i) axes.push_back(gen());
        const ObservableSet S = build_set(axes);
        const QubitState rho = make_state(std::cbrt(unif(gen.eng)) * gen().normalized());
        CHECK(realizable(S, expectations_of(S, rho), 1.0));
        CHECK(realizable(S, expectations_of(S, rho), rho.r.norm() + 1e-12));
    }
}

TEST_CASE("coeffs quadratic form equals |M+ u|^2") {
    DirGen gen;
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 1 + rep % 5;
        std::vector<Vec3> axes;
        for (int i = 0; i < n; ++i) axes.push_back(gen());
        const ObservableSet S = build_set(axes);
        ExpectationVector u(n);
        for (int i = 0; i < n; ++i) u(i) = -1.0 + 2.0 * gen.gauss(gen.eng);
        const double quad = u.transpose() * S.coeffs * u;
        const double direct = (S.pseudoinverse * u).squaredNorm();
        CHECK(std::abs(quad - direct) <= 1e-9 * std::max(1.0, std::abs(quad)));
    }
}
