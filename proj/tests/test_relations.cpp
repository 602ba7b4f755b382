#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qur/relations.hpp"

using namespace qur;

namespace {

struct Rng {
    std::mt19937_64 eng{777};
    std::normal_distribution<double> gauss{0.0, 1.0};
    std::uniform_real_distribution<double> unif{0.0, 1.0};

    Vec3 unit() {
        while (true) {
            const Vec3 v(gauss(eng), gauss(eng), gauss(eng));
            if (v.norm() > 1e-6) return v.normalized();
        }
    }
    Vec3 ball() { return std::cbrt(unif(eng)) * unit(); }
    double signed_unit() { return 2.0 * unif(eng) - 1.0; }
};

// Axis pair with a prescribed overlap a.b = ab.
std::pair<PauliObservable, PauliObservable> pair_with_overlap(double ab) {
    const PauliObservable A = make_observable({1, 0, 0});
    const PauliObservable B =
        make_observable({ab, std::sqrt(std::max(0.0, 1.0 - ab * ab)), 0.0});
    return {A, B};
}

}  // namespace

TEST_CASE("expectation pair: worked examples") {
    RelationVerdict v = expectation_pair_relation(1.0, 0.0, 0.0, 1.0);
    CHECK(v.satisfied);
    CHECK(v.saturated);

    v = expectation_pair_relation(1.0, 1.0, 0.0, 1.0);
    CHECK_FALSE(v.satisfied);

    v = expectation_pair_relation(0.9, 0.9, 0.5, 1.0);
    CHECK_FALSE(v.satisfied);
    CHECK(v.lhs == doctest::Approx(0.81).epsilon(1e-14));
    CHECK(v.rhs == doctest::Approx(0.75).epsilon(1e-14));

    CHECK_THROWS_AS(expectation_pair_relation(1.5, 0.0, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(expectation_pair_relation(0.0, 0.0, 0.0, 1.5), DomainError);
}

TEST_CASE("stddev pair: worked examples") {
    CHECK(stddev_pair_relation(0.0, 1.0, 0.0, 1.0).saturated);
    CHECK(stddev_pair_relation(0.0, std::sqrt(3.0) / 2.0, 0.5, 1.0).saturated);
    CHECK(stddev_pair_relation(0.5, 0.5, 0.5, 1.0).saturated);
    CHECK_FALSE(stddev_pair_relation(0.0, 0.0, 0.5, 1.0).satisfied);
    CHECK_THROWS_AS(stddev_pair_relation(-0.1, 0.0, 0.0, 1.0), DomainError);
}

TEST_CASE("product form: worked examples") {
    RelationVerdict v = equivalent_product_form(1.0, 1.0, 0.5);
    CHECK(v.satisfied);
    CHECK_FALSE(v.saturated);
    CHECK_FALSE(equivalent_product_form(0.0, 0.0, 0.5).satisfied);
    CHECK(equivalent_product_form(0.5, 0.5, 0.5).saturated);
}

TEST_CASE("monotone closure: worked examples and the unattainable flag") {
    CHECK(monotone_closure_relation(1.0, 1.0, 0.5, 1.0).satisfied);
    CHECK(monotone_closure_relation(std::sqrt(3.0) / 2.0, 0.0, 0.5, 1.0).saturated);
    CHECK_FALSE(monotone_closure_relation(0.3, 0.3, 0.5, 1.0).satisfied);

    // at radius 0.8 a standard deviation of 0.3 would need |<A>| > 0.8
    RelationVerdict v = monotone_closure_relation(0.3, 0.9, 0.5, 0.8);
    CHECK(v.unattainable);
    CHECK_FALSE(v.satisfied);
    CHECK(v.slack == -std::numeric_limits<double>::infinity());

    // attainable values at reduced radius keep the flag clear
    v = monotone_closure_relation(0.9, 0.9, 0.5, 0.8);
    CHECK_FALSE(v.unattainable);
}

TEST_CASE("disjunctive closure: worked examples") {
    CHECK(disjunctive_closure_relation(1.0, 1.0, 0.5).satisfied);
    CHECK(disjunctive_closure_relation(std::sqrt(3.0) / 2.0, 0.0, 0.5).saturated);
    CHECK_FALSE(disjunctive_closure_relation(0.3, 0.3, 0.5).satisfied);
}

TEST_CASE("stddev region and product form agree everywhere at radius 1") {
    for (const double ab : {0.0, 0.25, 0.5, 0.9}) {
        int disagreements = 0;
        for (int i = 0; i < 500; ++i)
            for (int j = 0; j < 500; ++j) {
                const double dA = static_cast<double>(i) / 499.0;
                const double dB = static_cast<double>(j) / 499.0;
                const bool region = stddev_pair_relation(dA, dB, ab, 1.0).satisfied;
                const bool product = equivalent_product_form(dA, dB, ab).satisfied;
                if (region != product) ++disagreements;
            }
        CHECK(disagreements == 0);
    }
}

TEST_CASE("monotone closure and disjunctive form agree everywhere at radius 1") {
    for (const double ab : {0.0, 0.25, 0.5, 0.9}) {
        int disagreements = 0;
        for (int i = 0; i < 500; ++i)
            for (int j = 0; j < 500; ++j) {
                const double dA = static_cast<double>(i) / 499.0;
                const double dB = static_cast<double>(j) / 499.0;
                const bool closure = monotone_closure_relation(dA, dB, ab, 1.0).satisfied;
                const bool disjunct = disjunctive_closure_relation(dA, dB, ab).satisfied;
                if (closure != disjunct) ++disagreements;
            }
        CHECK(disagreements == 0);
    }
}

TEST_CASE("the pair region implies its closure and the comparison bounds") {
    for (const double ab : {0.0, 0.25, 0.5, 0.9}) {
        for (int i = 0; i < 300; ++i)
            for (int j = 0; j < 300; ++j) {
                const double dA = static_cast<double>(i) / 299.0;
                const double dB = static_cast<double>(j) / 299.0;
                if (!stddev_pair_relation(dA, dB, ab, 1.0).satisfied) continue;
                CHECK(monotone_closure_relation(dA, dB, ab, 1.0).satisfied);
                const auto [sum, quad] = busch_bounds(dA, dB, ab);
                CHECK(sum.satisfied);
                CHECK(quad.satisfied);
            }
    }
}

TEST_CASE("n-observable relation: worked examples") {
    const ObservableSet ortho =
        build_set({Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)});
    CHECK(n_observable_relation({1, 1, 1}, {+1, +1, +1}, ortho, 0.0).saturated);
    CHECK(n_observable_relation({0, 1, 1}, {+1, +1, +1}, ortho, 1.0).saturated);

    const double s = 1.0 / std::sqrt(3.0);
    const ObservableSet tetra =
        build_set({Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s), Vec3(-s, -s, s)});
    const double d = std::sqrt(8.0) / 3.0;
    CHECK(n_observable_relation({0, d, d, d}, {+1, -1, -1, -1}, tetra, 1.0).saturated);

    CHECK_THROWS_AS(n_observable_relation({0.5, 0.5}, {+1}, ortho, 1.0), DimensionMismatch);
    CHECK_THROWS_AS(n_observable_relation({0.5, 0.5, 0.5}, {+1, +1, 0}, ortho, 1.0), DomainError);
}

TEST_CASE("n-observable relation holds with equality exactly on rank-3 spans") {
    Rng rng;
    int tested = 0;
    for (int rep = 0; rep < 10000; ++rep) {
        const int n = 2 + rep % 4;
        std::vector<Vec3> axes;
        for (int i = 0; i < n; ++i) axes.push_back(rng.unit());
        const ObservableSet S = build_set(axes);
        // The identity is exact, but evaluating it in floating point amplifies
        // rounding by the coefficient magnitudes (near-degenerate spans have a
        // huge pseudoinverse), so keep the sweep to well-conditioned sets.
        if (S.coeffs.cwiseAbs().maxCoeff() > 1e3) continue;
        ++tested;
        const QubitState rho = make_state(rng.ball());
        const ExpectationVector u = expectations_of(S, rho);
        std::vector<double> ds(n);
        SignVector taus(n);
        for (int i = 0; i < n; ++i) {
            ds[i] = std::sqrt(std::max(0.0, 1.0 - u(i) * u(i)));
            taus[i] = u(i) >= 0.0 ? +1 : -1;
        }
        const RelationVerdict v = n_observable_relation(ds, taus, S, rho.r.norm());
        CHECK(v.satisfied);
        if (S.span_rank == 3) CHECK(std::abs(v.lhs - v.rhs) <= 1e-9);
    }
    CHECK(tested > 9000);
}

TEST_CASE("sign-assignment search: worked examples") {
    const ObservableSet pair = build_set({Vec3(1, 0, 0), Vec3(0, 1, 0)});
    const auto hit = exists_sign_assignment({0.6, 0.8}, pair, 1.0);
    REQUIRE(hit.has_value());
    CHECK((*hit)[0] == +1);
    CHECK((*hit)[1] == +1);

    CHECK_FALSE(exists_sign_assignment({0.0, 0.0}, pair, 1.0).has_value());

    const double s = 1.0 / std::sqrt(3.0);
    const ObservableSet tetra =
        build_set({Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s), Vec3(-s, -s, s)});
    CHECK_FALSE(exists_sign_assignment({0, 0, 0, 0}, tetra, 1.0).has_value());

    const ObservableSet big = build_set(std::vector<Vec3>(21, Vec3(0, 0, 1)));
    CHECK_THROWS_AS(exists_sign_assignment(std::vector<double>(21, 0.5), big, 1.0),
                    TooManyObservables);
}

TEST_CASE("sign-assignment hits are sound and found for every actual state") {
    Rng rng;
    for (int rep = 0; rep < 2000; ++rep) {
        const int n = 2 + rep % 3;
        std::vector<Vec3> axes;
        for (int i = 0; i < n; ++i) axes.push_back(rng.unit());
        const ObservableSet S = build_set(axes);
        const QubitState rho = make_state(rng.ball());
        const ExpectationVector u = expectations_of(S, rho);
        std::vector<double> ds(n);
        for (int i = 0; i < n; ++i) ds[i] = std::sqrt(std::max(0.0, 1.0 - u(i) * u(i)));
        const double radius = std::min(1.0, rho.r.norm() + 1e-6);
        const auto taus = exists_sign_assignment(ds, S, radius);
        REQUIRE(taus.has_value());
        ExpectationVector v(n);
        for (int i = 0; i < n; ++i) v(i) = (*taus)[i] * std::sqrt(1.0 - ds[i] * ds[i]);
        CHECK(realizable(S, v, radius));
    }
}

TEST_CASE("triple geometry satisfies the volume identity") {
    Rng rng;
    for (int rep = 0; rep < 1000; ++rep) {
        const Vec3 a = rng.unit(), b = rng.unit(), c = rng.unit();
        const TripleGeometry g = make_triple_geometry(a, b, c);
        const double ab = a.dot(b), ac = a.dot(c), bc = b.dot(c);
        const double sum =
            g.cross_norm_sq[0] + g.cross_norm_sq[1] + g.cross_norm_sq[2];
        CHECK(std::abs(g.volume_sq - (sum + 2.0 * ab * ac * bc - 2.0)) <= 1e-12);
        CHECK(std::abs(g.volume_sq - std::pow(a.dot(b.cross(c)), 2)) <= 1e-12);
    }
}

TEST_CASE("triple relation: worked examples") {
    const Vec3 x(1, 0, 0), y(0, 1, 0), z(0, 0, 1);
    const double d = std::sqrt(2.0 / 3.0);
    RelationVerdict v = triple_relation(d, d, d, {+1, +1, +1}, x, y, z, 1.0);
    CHECK(v.saturated);
    CHECK(v.lhs == doctest::Approx(2.0).epsilon(1e-12));

    v = triple_relation(1.0, 1.0, 1.0, {+1, +1, +1}, x, y, z, 0.0);
    CHECK(v.saturated);
    CHECK(v.lhs == doctest::Approx(3.0).epsilon(1e-12));

    CHECK_THROWS_AS(triple_relation(0.5, 0.5, 0.5, {+1, +1, +1}, x, y, x, 1.0),
                    DegenerateTriple);
    CHECK_THROWS_AS(triple_relation(0.5, 0.5, 0.5, {+1, +1}, x, y, z, 1.0),
                    DimensionMismatch);
}

TEST_CASE("triple relation is an identity on actual states") {
    Rng rng;
    int used = 0;
    while (used < 2000) {
        const Vec3 a = rng.unit(), b = rng.unit(), c = rng.unit();
        const TripleGeometry g = make_triple_geometry(a, b, c);
        if (g.volume_sq < 1e-3) continue;
        ++used;
        const QubitState rho = make_state(rng.ball());
        const ObservableSet S = build_set({a, b, c});
        const ExpectationVector u = expectations_of(S, rho);
        std::vector<double> ds(3);
        SignVector taus(3);
        for (int i = 0; i < 3; ++i) {
            ds[i] = std::sqrt(std::max(0.0, 1.0 - u(i) * u(i)));
            taus[i] = u(i) >= 0.0 ? +1 : -1;
        }
        const RelationVerdict v =
            triple_relation(ds[0], ds[1], ds[2], taus, a, b, c, rho.r.norm());
        CHECK(std::abs(v.lhs - v.rhs) <= 1e-8);
    }
}

TEST_CASE("expectation triple: worked examples") {
    const Vec3 x(1, 0, 0), y(0, 1, 0), z(0, 0, 1);
    CHECK(expectation_triple_relation(1.0, 0.0, 0.0, x, y, z, 1.0).saturated);
    CHECK_FALSE(expectation_triple_relation(1.0, 1.0, 0.0, x, y, z, 1.0).satisfied);
    CHECK(expectation_triple_relation(0.6, 0.0, 0.8, x, y, z, 1.0).saturated);
    CHECK_THROWS_AS(expectation_triple_relation(0.5, 0.5, 0.5, x, y, x, 1.0),
                    DegenerateTriple);
}

TEST_CASE("expectation triple is an identity for every state, mixed included") {
    Rng rng;
    int used = 0;
    while (used < 2000) {
        const Vec3 a = rng.unit(), b = rng.unit(), c = rng.unit();
        if (make_triple_geometry(a, b, c).volume_sq < 1e-3) continue;
        ++used;
        const QubitState rho = make_state(rng.ball());
        const ObservableSet S = build_set({a, b, c});
        const ExpectationVector u = expectations_of(S, rho);
        const RelationVerdict v =
            expectation_triple_relation(u(0), u(1), u(2), a, b, c, rho.r.norm());
        CHECK(v.saturated);
    }
}

TEST_CASE("entropic pair: worked examples") {
    CHECK(entropic_pair_relation(0.0, 1.0, 0.0, 1.0).saturated);
    CHECK_FALSE(entropic_pair_relation(0.0, 0.0, 0.5, 1.0).satisfied);
    CHECK(entropic_pair_relation(1.0, 1.0, 0.5, 1.0).satisfied);
    CHECK_THROWS_AS(entropic_pair_relation(1.5, 0.0, 0.0, 1.0), DomainError);
}

TEST_CASE("entropic, stddev, and expectation slacks coincide on actual states") {
    // All three pair relations measure the same ellipse once expectations are
    // folded to magnitudes and the overlap to |a.b|.
    Rng rng;
    for (int rep = 0; rep < 5000; ++rep) {
        const PauliObservable A = make_observable(rng.unit());
        const PauliObservable B = make_observable(rng.unit());
        const QubitState rho = make_state(rng.ball());
        const double ab = A.axis.dot(B.axis);
        const double radius = rho.r.norm();
        const double uA = expectation(A, rho), uB = expectation(B, rho);

        const RelationVerdict exp_abs = expectation_pair_relation(
            std::abs(uA), std::abs(uB), std::abs(ab), radius);
        const RelationVerdict dev =
            stddev_pair_relation(std_dev(A, rho), std_dev(B, rho), ab, radius);
        const RelationVerdict ent = entropic_pair_relation(
            shannon_entropy(A, rho), shannon_entropy(B, rho), ab, radius);

        CHECK(std::abs(dev.slack - exp_abs.slack) <= 1e-9);
        CHECK(std::abs(ent.slack - exp_abs.slack) <= 1e-7);
        // and the signed expectation form can only be tighter-or-equal:
        // -2(a.b)uA uB >= -2|a.b||uA||uB| pushes the lhs up, the slack down
        const RelationVerdict exp_signed =
            expectation_pair_relation(uA, uB, ab, radius);
        CHECK(exp_signed.slack <= exp_abs.slack + 1e-12);
    }
}

TEST_CASE("every relation is satisfied by every actual state at its purity") {
    Rng rng;
    for (int rep = 0; rep < 10000; ++rep) {
        const PauliObservable A = make_observable(rng.unit());
        const PauliObservable B = make_observable(rng.unit());
        const QubitState rho = make_state(rng.ball());
        const double ab = A.axis.dot(B.axis);
        const double radius = rho.r.norm();
        const double uA = expectation(A, rho), uB = expectation(B, rho);
        const double dA = std_dev(A, rho), dB = std_dev(B, rho);

        CHECK(expectation_pair_relation(uA, uB, ab, radius).satisfied);
        CHECK(stddev_pair_relation(dA, dB, ab, radius).satisfied);
        CHECK(equivalent_product_form(dA, dB, ab).satisfied);
        const RelationVerdict mono = monotone_closure_relation(dA, dB, ab, radius);
        CHECK(mono.satisfied);
        CHECK_FALSE(mono.unattainable);
        CHECK(disjunctive_closure_relation(dA, dB, ab).satisfied);
        CHECK(entropic_pair_relation(shannon_entropy(A, rho), shannon_entropy(B, rho), ab,
                                     radius)
                  .satisfied);
        const auto [sum, quad] = busch_bounds(dA, dB, ab);
        CHECK(sum.satisfied);
        CHECK(quad.satisfied);
        CHECK(shannon_entropy(A, rho) + shannon_entropy(B, rho) >=
              maassen_uffink_bound(ab) - 1e-9);
        CHECK(dA * dB >= robertson_bound(A, B, rho) - 1e-9);
    }
}

TEST_CASE("soundness sweep: a million states per overlap violate nothing") {
    Rng rng;
    for (const double ab : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const PauliObservable A = make_observable({1, 0, 0});
        const PauliObservable B =
            make_observable({ab, std::sqrt(std::max(0.0, 1.0 - ab * ab)), 0.0});
        const ObservableSet S = build_set({A.axis, B.axis});
        long violations = 0;
        double worst = 0.0;
        for (int rep = 0; rep < 1000000; ++rep) {
            const QubitState rho = make_state(rng.ball());
            const double radius = rho.r.norm();
            const double uA = expectation(A, rho), uB = expectation(B, rho);
            const double dA = std_dev(A, rho), dB = std_dev(B, rho);
            const double HA = shannon_entropy(A, rho), HB = shannon_entropy(B, rho);

            double slacks[9];
            slacks[0] = expectation_pair_relation(uA, uB, ab, radius).slack;
            slacks[1] = stddev_pair_relation(dA, dB, ab, radius).slack;
            slacks[2] = equivalent_product_form(dA, dB, ab).slack;
            slacks[3] = monotone_closure_relation(dA, dB, ab, radius).slack;
            slacks[4] = disjunctive_closure_relation(dA, dB, ab).slack;
            slacks[5] = entropic_pair_relation(HA, HB, ab, radius).slack;
            const auto [sum, quad] = busch_bounds(dA, dB, ab);
            slacks[6] = sum.slack;
            slacks[7] = quad.slack;
            slacks[8] = HA + HB - maassen_uffink_bound(ab);
            SignVector taus = {uA >= 0.0 ? +1 : -1, uB >= 0.0 ? +1 : -1};
            const RelationVerdict nobs = n_observable_relation({dA, dB}, taus, S, radius);
            for (const double s : slacks) {
                if (s < -kSaturationTol) ++violations;
                worst = std::min(worst, s);
            }
            if (!nobs.satisfied) ++violations;
            if (dA * dB < robertson_bound(A, B, rho) - kSaturationTol) ++violations;
        }
        CHECK(violations == 0);
        CHECK(worst >= -kSaturationTol);
    }
}

TEST_CASE("saturating state from expectations: worked examples") {
    const auto [X, Y] = pair_with_overlap(0.0);
    CHECK(saturating_state_expectations(1.0, 0.0, X, Y).r.isApprox(X.axis, 1e-12));
    CHECK(saturating_state_expectations(0.6, 0.8, X, Y)
              .r.isApprox(0.6 * X.axis + 0.8 * Y.axis, 1e-12));

    const auto [A, B] = pair_with_overlap(0.5);
    CHECK(saturating_state_expectations(0.5, 0.5, A, B)
              .r.isApprox((A.axis + B.axis) / 3.0, 1e-12));

    CHECK_THROWS_AS(saturating_state_expectations(0.9, 0.9, X, Y), NotRealizable);
    const PauliObservable Z = make_observable({0, 0, 1});
    CHECK_THROWS_AS(saturating_state_expectations(0.5, 0.5, Z, Z), ParallelObservables);
}

TEST_CASE("constructed states reproduce their expectations and sit on the ellipse") {
    Rng rng;
    int used = 0;
    while (used < 10000) {
        const double ab = rng.signed_unit() * 0.98;
        const auto [A, B] = pair_with_overlap(ab);
        const double uA = rng.signed_unit(), uB = rng.signed_unit();
        if (!expectation_pair_relation(uA, uB, ab, 1.0).satisfied) continue;
        ++used;
        const QubitState rho = saturating_state_expectations(uA, uB, A, B);
        CHECK(std::abs(expectation(A, rho) - uA) <= 1e-9);
        CHECK(std::abs(expectation(B, rho) - uB) <= 1e-9);
        // in-span construction: the ellipse at the state's own purity is tight
        CHECK(expectation_pair_relation(uA, uB, ab, rho.r.norm()).saturated);
    }
}

TEST_CASE("boundary states: worked examples") {
    const auto [X, Y] = pair_with_overlap(0.0);
    auto [plus0, minus0] = boundary_states_stddev(0.0, X, Y);
    CHECK(plus0.r.isApprox(X.axis, 1e-12));
    CHECK(minus0.r.isApprox(X.axis, 1e-12));

    auto [plus, minus] = boundary_states_stddev(0.6, X, Y);
    CHECK(plus.r.isApprox(0.8 * X.axis + 0.6 * Y.axis, 1e-12));
    CHECK(minus.r.isApprox(0.8 * X.axis - 0.6 * Y.axis, 1e-12));
    CHECK(std_dev(Y, plus) == doctest::Approx(0.8).epsilon(1e-12));

    const auto [A, B] = pair_with_overlap(0.5);
    auto [p5, m5] = boundary_states_stddev(0.5, A, B);
    CHECK(std_dev(B, p5) == doctest::Approx(0.5).epsilon(1e-12));

    const PauliObservable Z = make_observable({0, 0, 1});
    CHECK_THROWS_AS(boundary_states_stddev(0.5, Z, Z), ParallelObservables);
    CHECK_THROWS_AS(boundary_states_stddev(1.5, X, Y), DomainError);
}

TEST_CASE("boundary states are pure, hit the target, and order Delta B") {
    Rng rng;
    for (int rep = 0; rep < 4000; ++rep) {
        const double ab = rng.signed_unit() * 0.98;
        const auto [A, B] = pair_with_overlap(ab);
        const double dA = rng.unif(rng.eng);
        const auto [plus, minus] = boundary_states_stddev(dA, A, B);
        for (const QubitState* s : {&plus, &minus}) {
            CHECK(std::abs(s->r.norm() - 1.0) <= 1e-9);
            CHECK(std::abs(std_dev(A, *s) - dA) <= 1e-9);
        }
        CHECK(std_dev(B, plus) <= std_dev(B, minus) + 1e-12);
        // the plus branch saturates the pure-state region at every dA
        CHECK(stddev_pair_relation(dA, std_dev(B, plus), ab, 1.0).saturated);
        // the minus branch saturates exactly on dA <= |a.b| (and trivially at 1)
        const bool minus_sat =
            stddev_pair_relation(dA, std_dev(B, minus), ab, 1.0).saturated;
        if (dA <= std::abs(ab) - 1e-9 || std::abs(ab) < 1e-12 || dA >= 1.0 - 1e-12)
            CHECK(minus_sat);
        else if (dA > std::abs(ab) + 1e-6 && dA < 1.0 - 1e-6)
            CHECK_FALSE(minus_sat);
    }
}

TEST_CASE("robertson bound: worked examples") {
    const PauliObservable X = make_observable({1, 0, 0});
    const PauliObservable Y = make_observable({0, 1, 0});
    CHECK(robertson_bound(X, Y, make_state({0, 0, 1})) == doctest::Approx(1.0));
    CHECK(robertson_bound(X, Y, make_state({1, 0, 0})) == doctest::Approx(0.0));
    CHECK(robertson_bound(X, X, make_state({0, 0, 1})) == doctest::Approx(0.0));
}

TEST_CASE("robertson bound never exceeds the uncertainty product") {
    Rng rng;
    for (int rep = 0; rep < 100000; ++rep) {
        const PauliObservable A = make_observable(rng.unit());
        const PauliObservable B = make_observable(rng.unit());
        const QubitState rho = make_state(rng.ball());
        CHECK(std_dev(A, rho) * std_dev(B, rho) >= robertson_bound(A, B, rho) - 1e-12);
    }
}

TEST_CASE("busch bounds: worked examples") {
    auto [sum1, quad1] = busch_bounds(std::sqrt(3.0) / 2.0, 0.0, 0.5);
    CHECK(sum1.saturated);
    CHECK(quad1.satisfied);
    CHECK_FALSE(quad1.saturated);

    auto [sum2, quad2] = busch_bounds(0.5, 0.5, 0.5);
    CHECK(sum2.satisfied);
    CHECK_FALSE(sum2.saturated);
    CHECK(quad2.saturated);
}

TEST_CASE("maassen-uffink bound values") {
    CHECK(maassen_uffink_bound(0.0) == doctest::Approx(1.0));
    CHECK(maassen_uffink_bound(1.0) == doctest::Approx(0.0));
    CHECK(maassen_uffink_bound(-1.0) == doctest::Approx(0.0));
    CHECK(maassen_uffink_bound(0.5) ==
          doctest::Approx(0.415037499278843819).epsilon(1e-15));
    CHECK_THROWS_AS(maassen_uffink_bound(1.5), DomainError);
}
