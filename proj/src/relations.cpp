#include "qur/relations.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qur {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kParallelTol = 1e-12;
constexpr double kDegenerateVolumeTol = 1e-12;

double checked_signed_unit(double x, const char* what) {
    if (x < -1.0) {
        if (x < -1.0 - kUnitTol) {
            throw DomainError(std::string(what) + " must lie in [-1, 1], got " +
                              std::to_string(x));
        }
        return -1.0;
    }
    if (x > 1.0) {
        if (x > 1.0 + kUnitTol) {
            throw DomainError(std::string(what) + " must lie in [-1, 1], got " +
                              std::to_string(x));
        }
        return 1.0;
    }
    return x;
}

double checked_unit(double x, const char* what) {
    if (x < 0.0) {
        if (x < -kUnitTol) {
            throw DomainError(std::string(what) + " must lie in [0, 1], got " +
                              std::to_string(x));
        }
        return 0.0;
    }
    if (x > 1.0) {
        if (x > 1.0 + kUnitTol) {
            throw DomainError(std::string(what) + " must lie in [0, 1], got " +
                              std::to_string(x));
        }
        return 1.0;
    }
    return x;
}

double checked_radius(double radius) {
    return checked_unit(radius, "radius");
}

void check_signs(const SignVector& taus, std::size_t n) {
    if (taus.size() != n) {
        throw DimensionMismatch("sign vector has length " + std::to_string(taus.size()) +
                                ", expected " + std::to_string(n));
    }
    for (int t : taus) {
        if (t != 1 && t != -1) {
            throw DomainError("signs must be +1 or -1, got " + std::to_string(t));
        }
    }
}

RelationVerdict verdict_ge(double lhs, double rhs) {
    RelationVerdict v;
    v.lhs = lhs;
    v.rhs = rhs;
    v.slack = lhs - rhs;
    v.satisfied = v.slack >= -kSaturationTol;
    v.saturated = v.satisfied && std::abs(v.slack) <= kSaturationTol;
    return v;
}

RelationVerdict verdict_le(double lhs, double rhs) {
    RelationVerdict v = verdict_ge(rhs, lhs);
    v.lhs = lhs;
    v.rhs = rhs;
    return v;
}

RelationVerdict verdict_eq(double lhs, double rhs) {
    RelationVerdict v;
    v.lhs = lhs;
    v.rhs = rhs;
    v.slack = -std::abs(lhs - rhs);
    v.satisfied = v.slack >= -kSaturationTol;
    v.saturated = v.satisfied;
    return v;
}

// sqrt(1 - x^2) with round-off clamped at the ends.
double coexpectation(double x) {
    const double g = 1.0 - x * x;
    return g > 0.0 ? std::sqrt(g) : 0.0;
}

double pair_quadratic(double uA, double uB, double ab) {
    return uA * uA + uB * uB - 2.0 * ab * uA * uB;
}

}  // namespace

RelationVerdict expectation_pair_relation(double uA, double uB, double ab, double radius) {
    uA = checked_signed_unit(uA, "<A>");
    uB = checked_signed_unit(uB, "<B>");
    ab = checked_signed_unit(ab, "a.b");
    radius = checked_radius(radius);
    const double lhs = pair_quadratic(uA, uB, ab);
    const double rhs = (1.0 - ab * ab) * radius * radius;
    return verdict_le(lhs, rhs);
}

RelationVerdict stddev_pair_relation(double dA, double dB, double ab, double radius) {
    dA = checked_unit(dA, "Delta A");
    dB = checked_unit(dB, "Delta B");
    ab = checked_signed_unit(ab, "a.b");
    radius = checked_radius(radius);
    const double lhs =
        dA * dA + dB * dB + 2.0 * std::abs(ab) * coexpectation(dA) * coexpectation(dB);
    const double rhs = 2.0 - (1.0 - ab * ab) * radius * radius;
    return verdict_ge(lhs, rhs);
}

RelationVerdict equivalent_product_form(double dA, double dB, double ab) {
    dA = checked_unit(dA, "Delta A");
    dB = checked_unit(dB, "Delta B");
    ab = checked_signed_unit(ab, "a.b");
    const double lhs = dA * dB;
    const double rhs = std::abs(coexpectation(dA) * coexpectation(dB) - std::abs(ab));
    return verdict_ge(lhs, rhs);
}

RelationVerdict monotone_closure_relation(double dA, double dB, double ab, double radius) {
    dA = checked_unit(dA, "Delta A");
    dB = checked_unit(dB, "Delta B");
    ab = checked_signed_unit(ab, "a.b");
    radius = checked_radius(radius);
    const double r2 = radius * radius;
    const double gA = r2 - (1.0 - dA * dA);
    const double gB = r2 - (1.0 - dB * dB);
    const double rhs = 2.0 - (1.0 + ab * ab) * r2;
    // A variance below 1 - radius^2 cannot occur at this purity: the point is
    // outside the closure's domain, reported as a flagged violation rather
    // than a number.
    if (gA < -kUnitTol || gB < -kUnitTol) {
        RelationVerdict v;
        v.lhs = dA * dA + dB * dB +
                2.0 * std::abs(ab) * std::sqrt(std::max(gA, 0.0)) * std::sqrt(std::max(gB, 0.0));
        v.rhs = rhs;
        v.slack = -std::numeric_limits<double>::infinity();
        v.satisfied = false;
        v.saturated = false;
        v.unattainable = true;
        return v;
    }
    const double lhs = dA * dA + dB * dB +
                       2.0 * std::abs(ab) * std::sqrt(std::max(gA, 0.0)) *
                           std::sqrt(std::max(gB, 0.0));
    return verdict_ge(lhs, rhs);
}

RelationVerdict disjunctive_closure_relation(double dA, double dB, double ab) {
    dA = checked_unit(dA, "Delta A");
    dB = checked_unit(dB, "Delta B");
    ab = checked_signed_unit(ab, "a.b");
    const double lhs1 = dA * dA + dB * dB;
    const double rhs1 = 1.0;
    // Second disjunct in angle form: with alpha = asin(dA) and beta = asin(dB)
    // the inequality dA sqrt(1-dB^2) + dB sqrt(1-dA^2) >= sqrt(1-(a.b)^2)
    // reads sin(alpha+beta) >= sin(gamma), gamma = acos|a.b|, i.e.
    // gamma <= alpha+beta <= pi-gamma. The sine version has a vanishing
    // gradient at a.b = 0 (its boundary sits at the sine's maximum), which
    // lets points a measurable distance outside creep inside the verdict
    // tolerance; the angle gap keeps slack commensurate with distance.
    const double angle = std::asin(dA) + std::asin(dB);
    const double lhs2 = std::min(angle, M_PI - angle);
    const double rhs2 = std::acos(std::abs(ab));
    if (lhs1 - rhs1 >= lhs2 - rhs2) {
        return verdict_ge(lhs1, rhs1);
    }
    return verdict_ge(lhs2, rhs2);
}

RelationVerdict n_observable_relation(const std::vector<double>& ds, const SignVector& taus,
                                      const ObservableSet& S, double radius) {
    const std::size_t n = static_cast<std::size_t>(S.size());
    if (ds.size() != n) {
        throw DimensionMismatch("uncertainty tuple has length " + std::to_string(ds.size()) +
                                ", set has " + std::to_string(n) + " observables");
    }
    check_signs(taus, n);
    radius = checked_radius(radius);

    std::vector<double> d(n);
    std::vector<double> co(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = checked_unit(ds[i], "Delta");
        co[i] = taus[i] * coexpectation(d[i]);
    }

    double lhs = 0.0;
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Index ii = static_cast<Eigen::Index>(i);
        lhs += S.coeffs(ii, ii) * d[i] * d[i];
        trace += S.coeffs(ii, ii);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) {
                continue;
            }
            lhs -= S.coeffs(ii, static_cast<Eigen::Index>(j)) * co[i] * co[j];
        }
    }
    const double rhs = trace - radius * radius;
    // Rank-3 spans pin |r| exactly, so the relation is an equality there;
    // smaller spans only bound the projection of r, leaving an inequality.
    if (S.span_rank == 3) {
        return verdict_eq(lhs, rhs);
    }
    return verdict_ge(lhs, rhs);
}

std::optional<SignVector> exists_sign_assignment(const std::vector<double>& ds,
                                                 const ObservableSet& S, double radius) {
    const std::size_t n = static_cast<std::size_t>(S.size());
    if (ds.size() != n) {
        throw DimensionMismatch("uncertainty tuple has length " + std::to_string(ds.size()) +
                                ", set has " + std::to_string(n) + " observables");
    }
    if (n > 20) {
        throw TooManyObservables("sign search over " + std::to_string(n) +
                                 " observables exceeds the cap of 20");
    }
    radius = checked_radius(radius);

    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) {
        mag[i] = coexpectation(checked_unit(ds[i], "Delta"));
    }

    // A global flip u -> -u preserves realizability, so tau_1 is pinned to +1
    // and the rest are enumerated with +1 before -1; the first hit is the
    // lexicographic minimum over all working assignments.
    const std::uint64_t limit = n == 1 ? 1 : (std::uint64_t{1} << (n - 1));
    SignVector taus(n, 1);
    ExpectationVector u(static_cast<Eigen::Index>(n));
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        for (std::size_t k = 1; k < n; ++k) {
            const std::uint64_t bit = (mask >> (n - 1 - k)) & 1u;
            taus[k] = bit ? -1 : 1;
        }
        for (std::size_t i = 0; i < n; ++i) {
            u(static_cast<Eigen::Index>(i)) = taus[i] * mag[i];
        }
        if (realizable(S, u, radius)) {
            return taus;
        }
    }
    return std::nullopt;
}

TripleGeometry make_triple_geometry(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 an = make_observable(a).axis;
    const Vec3 bn = make_observable(b).axis;
    const Vec3 cn = make_observable(c).axis;
    TripleGeometry g;
    g.cross[0] = bn.cross(cn);
    g.cross[1] = cn.cross(an);
    g.cross[2] = an.cross(bn);
    for (int i = 0; i < 3; ++i) {
        g.cross_norm_sq[static_cast<std::size_t>(i)] = g.cross[static_cast<std::size_t>(i)].squaredNorm();
    }
    g.cross_dot[0] = g.cross[0].dot(g.cross[1]);
    g.cross_dot[1] = g.cross[0].dot(g.cross[2]);
    g.cross_dot[2] = g.cross[1].dot(g.cross[2]);
    const double vol = an.dot(bn.cross(cn));
    g.volume_sq = vol * vol;
    return g;
}

RelationVerdict triple_relation(double dA, double dB, double dC, const SignVector& taus,
                                const Vec3& a, const Vec3& b, const Vec3& c, double radius) {
    check_signs(taus, 3);
    radius = checked_radius(radius);
    const TripleGeometry g = make_triple_geometry(a, b, c);
    if (g.volume_sq <= kDegenerateVolumeTol) {
        throw DegenerateTriple("directions are coplanar (V^2 = " + std::to_string(g.volume_sq) +
                               ")");
    }
    const double d[3] = {checked_unit(dA, "Delta A"), checked_unit(dB, "Delta B"),
                         checked_unit(dC, "Delta C")};
    double co[3];
    for (int i = 0; i < 3; ++i) {
        co[i] = taus[static_cast<std::size_t>(i)] * coexpectation(d[i]);
    }
    double lhs = 0.0;
    for (int i = 0; i < 3; ++i) {
        lhs += g.cross_norm_sq[static_cast<std::size_t>(i)] * d[i] * d[i];
    }
    lhs -= 2.0 * g.cross_dot[0] * co[0] * co[1];
    lhs -= 2.0 * g.cross_dot[1] * co[0] * co[2];
    lhs -= 2.0 * g.cross_dot[2] * co[1] * co[2];
    const double sum_norms =
        g.cross_norm_sq[0] + g.cross_norm_sq[1] + g.cross_norm_sq[2];
    const double rhs = sum_norms - g.volume_sq * radius * radius;
    return verdict_eq(lhs, rhs);
}

RelationVerdict expectation_triple_relation(double uA, double uB, double uC, const Vec3& a,
                                            const Vec3& b, const Vec3& c, double radius) {
    radius = checked_radius(radius);
    const TripleGeometry g = make_triple_geometry(a, b, c);
    if (g.volume_sq <= kDegenerateVolumeTol) {
        throw DegenerateTriple("directions are coplanar (V^2 = " + std::to_string(g.volume_sq) +
                               ")");
    }
    const double u[3] = {checked_signed_unit(uA, "<A>"), checked_signed_unit(uB, "<B>"),
                         checked_signed_unit(uC, "<C>")};
    const Vec3 sum = g.cross[0] * u[0] + g.cross[1] * u[1] + g.cross[2] * u[2];
    const double lhs = sum.squaredNorm();
    const double rhs = g.volume_sq * radius * radius;
    return verdict_eq(lhs, rhs);
}

RelationVerdict entropic_pair_relation(double HA, double HB, double ab, double radius) {
    HA = checked_unit(HA, "H(A)");
    HB = checked_unit(HB, "H(B)");
    ab = checked_signed_unit(ab, "a.b");
    radius = checked_radius(radius);
    const double fA = f_of_entropy(HA);
    const double fB = f_of_entropy(HB);
    const double lhs = fA * fA + fB * fB - 2.0 * std::abs(ab) * fA * fB;
    const double rhs = (1.0 - ab * ab) * radius * radius;
    return verdict_le(lhs, rhs);
}

QubitState saturating_state_expectations(double uA, double uB, const PauliObservable& A,
                                         const PauliObservable& B) {
    uA = checked_signed_unit(uA, "<A>");
    uB = checked_signed_unit(uB, "<B>");
    const double ab = A.axis.dot(B.axis);
    if (std::abs(ab) >= 1.0 - kParallelTol) {
        throw ParallelObservables("|a.b| = " + std::to_string(std::abs(ab)));
    }
    const RelationVerdict membership = expectation_pair_relation(uA, uB, ab, 1.0);
    const Vec3 r = (uA * (A.axis - ab * B.axis) + uB * (B.axis - ab * A.axis)) /
                   (1.0 - ab * ab);
    if (!membership.satisfied || r.norm() > 1.0 + kUnitTol) {
        throw NotRealizable("(" + std::to_string(uA) + ", " + std::to_string(uB) +
                            ") lies outside the expectation ellipse");
    }
    return make_state(r);
}

std::pair<QubitState, QubitState> boundary_states_stddev(double dA, const PauliObservable& A,
                                                         const PauliObservable& B) {
    dA = checked_unit(dA, "Delta A");
    const double ab = A.axis.dot(B.axis);
    if (std::abs(ab) >= 1.0 - kParallelTol) {
        throw ParallelObservables("|a.b| = " + std::to_string(std::abs(ab)));
    }
    const double tau = ab < 0.0 ? -1.0 : 1.0;
    const Vec3 transverse = (B.axis - ab * A.axis) / std::sqrt(1.0 - ab * ab);
    const Vec3 base = coexpectation(dA) * A.axis;
    const Vec3 step = tau * dA * transverse;
    return {make_state(base + step), make_state(base - step)};
}

double robertson_bound(const PauliObservable& A, const PauliObservable& B,
                       const QubitState& rho) {
    return std::abs(A.axis.cross(B.axis).dot(rho.r));
}

std::pair<RelationVerdict, RelationVerdict> busch_bounds(double dA, double dB, double ab) {
    dA = checked_unit(dA, "Delta A");
    dB = checked_unit(dB, "Delta B");
    ab = checked_signed_unit(ab, "a.b");
    const RelationVerdict sum =
        verdict_ge(dA + dB, std::sqrt(std::max(1.0 - ab * ab, 0.0)));
    const RelationVerdict quadratic = verdict_ge(dA * dA + dB * dB, 1.0 - std::abs(ab));
    return {sum, quadratic};
}

double maassen_uffink_bound(double ab) {
    ab = checked_signed_unit(ab, "a.b");
    return -std::log2(0.5 * (1.0 + std::abs(ab)));
}

}  // namespace qur
