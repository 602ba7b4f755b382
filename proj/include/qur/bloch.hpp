#pragma once

#include <Eigen/Dense>

#include "qur/errors.hpp"

namespace qur {

using Vec3 = Eigen::Vector3d;

enum class UncertaintyMeasure { Expectation, StdDev, ShannonEntropy };

// A +/-1-valued qubit observable A = a.sigma, stored as its unit Bloch
// direction a.
struct PauliObservable {
    Vec3 axis;
};

// A qubit state rho = (1 + r.sigma)/2, stored as its Bloch vector (|r| <= 1).
struct QubitState {
    Vec3 r;
};

/// Normalizes `axis` into a unit direction. Throws ZeroDirection when
/// |axis| <= 1e-12.
PauliObservable make_observable(const Vec3& axis);

/// Validates a Bloch vector. Norms in (1, 1 + 1e-12] are clamped back onto the
/// sphere; anything larger throws NotAState.
QubitState make_state(const Vec3& r);

/// <A> = a.r, always in [-1, 1].
double expectation(const PauliObservable& A, const QubitState& rho);

/// Delta A = sqrt(1 - <A>^2), always in [0, 1].
double std_dev(const PauliObservable& A, const QubitState& rho);

/// H(A) = h2((1 + <A>)/2), base-2 Shannon entropy of the outcome
/// distribution, in [0, 1].
double shannon_entropy(const PauliObservable& A, const QubitState& rho);

/// Binary entropy h2(p) = -p log2 p - (1-p) log2 (1-p), with h2(0) = h2(1) = 0
/// taken exactly. Throws DomainError when p is outside [0, 1] by more than
/// 1e-12 (values inside that slop are clamped).
double binary_entropy(double p);

/// Inverse of h2 restricted to the branch [0, 1/2], computed by bisection to
/// an absolute tolerance below 1e-14 in p. Throws DomainError outside [0, 1].
double binary_entropy_inverse(double y);

/// f(H) = 1 - 2 h2^-1(H): the magnitude |<A>| consistent with outcome
/// entropy H. Decreasing bijection [0, 1] -> [0, 1].
double f_of_entropy(double H);

/// <A> = sign * sqrt(1 - delta^2). `sign` must be +1 or -1; `delta` must be
/// in [0, 1].
double expectation_from_std(double delta, int sign);

}  // namespace qur
