#include "qur/povm.hpp"

#include <cmath>
#include <string>

namespace qur {

namespace {

constexpr double kPovmTol = 1e-12;

}  // namespace

BinaryPovm make_povm(double alpha, const Vec3& a) {
    const double budget = std::abs(alpha) + a.norm();
    if (budget > 1.0 + kPovmTol) {
        throw DomainError("|alpha| + |a| = " + std::to_string(budget) +
                          " exceeds 1: effects are not positive");
    }
    return BinaryPovm{alpha, a};
}

PauliReduction reduce_to_pauli(const BinaryPovm& P) {
    const double scale = P.a.norm();
    if (scale <= kPovmTol) {
        throw TrivialObservable("POVM direction vanishes; outcomes carry no information");
    }
    return PauliReduction{PauliObservable{P.a / scale}, P.alpha, scale};
}

double povm_expectation(const BinaryPovm& P, const QubitState& rho) {
    const double u = P.alpha + P.a.dot(rho.r);
    return u < -1.0 ? -1.0 : (u > 1.0 ? 1.0 : u);
}

std::pair<double, double> povm_distribution(const BinaryPovm& P, const QubitState& rho) {
    const double u = povm_expectation(P, rho);
    return {0.5 * (1.0 + u), 0.5 * (1.0 - u)};
}

double povm_std_dev(const BinaryPovm& P, const QubitState& rho) {
    const double u = povm_expectation(P, rho);
    const double g = 1.0 - u * u;
    return g > 0.0 ? std::sqrt(g) : 0.0;
}

RelationVerdict povm_pair_relation(const BinaryPovm& P, const BinaryPovm& Q, double uP,
                                   double uQ, double radius) {
    if (radius < 0.0 || radius > 1.0 + kPovmTol) {
        throw DomainError("radius must lie in [0, 1], got " + std::to_string(radius));
    }
    const PauliReduction rp = reduce_to_pauli(P);
    const PauliReduction rq = reduce_to_pauli(Q);
    const double up = (uP - rp.offset) / rp.scale;
    const double uq = (uQ - rq.offset) / rq.scale;
    const double ab = rp.direction.axis.dot(rq.direction.axis);
    // The reduced pair is checked against the projective expectation ellipse
    // directly; a claim outside the POVM's reachable band reduces to
    // |u~| > 1, where the quadratic form already exceeds the bound, so no
    // separate domain guard is wanted here.
    const double lhs = up * up + uq * uq - 2.0 * ab * up * uq;
    const double rhs = (1.0 - ab * ab) * radius * radius;
    RelationVerdict v;
    v.lhs = lhs;
    v.rhs = rhs;
    v.slack = rhs - lhs;
    v.satisfied = v.slack >= -kSaturationTol;
    v.saturated = v.satisfied && std::abs(v.slack) <= kSaturationTol;
    return v;
}

}  // namespace qur
