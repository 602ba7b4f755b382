#pragma once

#include <utility>

#include "qur/bloch.hpp"
#include "qur/errors.hpp"
#include "qur/relations.hpp"

namespace qur {

// Two-outcome POVM {E+, E-} with E+- = (1/2)[(1 +- alpha) 1 +- a.sigma].
// Positivity of both effects is exactly |alpha| + |a| <= 1.
struct BinaryPovm {
    double alpha = 0.0;
    Vec3 a{0.0, 0.0, 0.0};
};

// A POVM rewritten around its projective core: the +-1 outcome value
// satisfies <A> = offset + scale * <direction>.
struct PauliReduction {
    PauliObservable direction;
    double offset = 0.0;
    double scale = 0.0;
};

/// Validates |alpha| + |a| <= 1 (tolerance 1e-12); throws DomainError
/// otherwise.
BinaryPovm make_povm(double alpha, const Vec3& a);

/// Splits P into unit direction, offset alpha, and scale |a|. Throws
/// TrivialObservable when |a| <= 1e-12 (the POVM carries no information).
PauliReduction reduce_to_pauli(const BinaryPovm& P);

/// Outcome expectation <A> = alpha + a.r, in [-1, 1].
double povm_expectation(const BinaryPovm& P, const QubitState& rho);

/// Outcome probabilities (p+, p-) = ((1 +- <A>)/2).
std::pair<double, double> povm_distribution(const BinaryPovm& P, const QubitState& rho);

/// Standard deviation of the +-1 outcome: sqrt(1 - <A>^2), equal to
/// 2 sqrt(p+ p-). Defined through the outcome distribution, not through any
/// effective-operator second moment.
double povm_std_dev(const BinaryPovm& P, const QubitState& rho);

/// Expectation-pair relation for two POVMs, evaluated after reducing each
/// claimed outcome expectation to its projective core:
/// u~ = (u - alpha) / |a|, with a~.b~ the cosine between the directions.
/// Claims outside the reachable band reduce to |u~| > 1 and come back
/// violated. Throws TrivialObservable when either direction vanishes.
RelationVerdict povm_pair_relation(const BinaryPovm& P, const BinaryPovm& Q, double uP,
                                   double uQ, double radius);

}  // namespace qur
