#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qur/bloch.hpp"
#include "qur/errors.hpp"
#include "qur/observable_set.hpp"

namespace qur {

// Shared tolerance for satisfied/saturated verdicts.
inline constexpr double kSaturationTol = 1e-9;

// Outcome of evaluating one relation at one point.
//
// `slack` is signed so that satisfied <=> slack >= -kSaturationTol regardless
// of the relation's direction: lhs - rhs for ">=" relations, rhs - lhs for
// "<=" relations, and -|lhs - rhs| for equality relations (where satisfied
// and saturated coincide). saturated <=> |slack| <= kSaturationTol.
//
// `unattainable` is set only by the radius-limited monotone closure when the
// queried uncertainty value is impossible at the given purity (square-root
// argument negative); the verdict is then violated and slack is -infinity.
struct RelationVerdict {
    bool satisfied = false;
    bool saturated = false;
    bool unattainable = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
};

// One sign tau_i in {+1, -1} per observable.
using SignVector = std::vector<int>;

// Pairwise cross-product data of three Bloch directions (a, b, c):
// cross = {b x c, c x a, a x b}, cross_norm_sq their squared norms,
// cross_dot = {c0.c1, c0.c2, c1.c2}, volume_sq = (a.(b x c))^2.
// Satisfies volume_sq = sum cross_norm_sq + 2(a.b)(a.c)(b.c) - 2.
struct TripleGeometry {
    std::array<Vec3, 3> cross;
    std::array<double, 3> cross_norm_sq;
    std::array<double, 3> cross_dot;
    double volume_sq = 0.0;
};

/// Expectation-pair ellipse: <A>^2 + <B>^2 - 2(a.b)<A><B> <= (1-(a.b)^2) radius^2.
/// uA, uB, ab in [-1, 1]; radius in [0, 1].
RelationVerdict expectation_pair_relation(double uA, double uB, double ab, double radius);

/// Standard-deviation pair region:
/// dA^2 + dB^2 + 2|a.b| sqrt(1-dA^2) sqrt(1-dB^2) >= 2 - (1-(a.b)^2) radius^2.
/// dA, dB in [0, 1].
RelationVerdict stddev_pair_relation(double dA, double dB, double ab, double radius);

/// Product form equivalent to the radius-1 stddev pair region:
/// dA dB >= | sqrt(1-dA^2) sqrt(1-dB^2) - |a.b| |.
RelationVerdict equivalent_product_form(double dA, double dB, double ab);

/// Monotone closure of the stddev pair region at fixed purity:
/// dA^2 + dB^2 + 2|a.b| sqrt(radius^2-(1-dA^2)) sqrt(radius^2-(1-dB^2))
///   >= 2 - (1+(a.b)^2) radius^2,
/// which at radius 1 reduces to dA^2 + dB^2 + 2|a.b| dA dB >= 1 - (a.b)^2.
/// A negative square-root argument means that uncertainty value is impossible
/// at the given purity: the verdict comes back violated with the unattainable
/// flag set and slack -infinity.
RelationVerdict monotone_closure_relation(double dA, double dB, double ab, double radius);

/// Disjunctive form of the radius-1 monotone closure: satisfied iff
/// dA^2 + dB^2 >= 1 or asin(dA) + asin(dB) >= acos|a.b| (the angle form of
/// dA sqrt(1-dB^2) + dB sqrt(1-dA^2) >= sqrt(1-(a.b)^2), whose gradient
/// degenerates at a.b = 0). slack is the larger disjunct's slack (squared
/// units for the first, radians for the second); lhs/rhs report that
/// disjunct.
RelationVerdict disjunctive_closure_relation(double dA, double dB, double ab);

/// n-observable standard-deviation relation with signs tau:
/// sum_i m_ii d_i^2 - sum_{i != j} tau_i tau_j m_ij sqrt(1-d_i^2) sqrt(1-d_j^2)
/// compared against sum_i m_ii - radius^2. Equality form when the axes span
/// rank 3 (radius is the exact purity |r|); ">=" form otherwise.
RelationVerdict n_observable_relation(const std::vector<double>& ds, const SignVector& taus,
                                      const ObservableSet& S, double radius);

/// Searches for signs tau making u_i = tau_i sqrt(1-d_i^2) realizable within
/// the given radius. Enumerates tau_1 = +1 only (a global flip preserves
/// realizability), in lexicographic order with +1 before -1, returning the
/// first hit; std::nullopt when none works. Throws TooManyObservables past
/// n = 20.
std::optional<SignVector> exists_sign_assignment(const std::vector<double>& ds,
                                                 const ObservableSet& S, double radius);

/// Cross-product data for a direction triple (inputs are normalized; throws
/// ZeroDirection on a vanishing one).
TripleGeometry make_triple_geometry(const Vec3& a, const Vec3& b, const Vec3& c);

/// Explicit three-observable equality form, written with the cross products
/// of the axes:
/// |bxc|^2 dA^2 + |cxa|^2 dB^2 + |axb|^2 dC^2
///   - 2 tau_A tau_B (bxc).(cxa) sqrt(1-dA^2) sqrt(1-dB^2) - (two more terms)
///   = |axb|^2 + |axc|^2 + |bxc|^2 - V^2 radius^2.
/// radius is the exact purity |r|. Throws DegenerateTriple when V^2 <= 1e-12.
RelationVerdict triple_relation(double dA, double dB, double dC, const SignVector& taus,
                                const Vec3& a, const Vec3& b, const Vec3& c, double radius);

/// Expectation form of the triple equality:
/// |(bxc)<A> + (cxa)<B> + (axb)<C>|^2 = V^2 radius^2.
/// Throws DegenerateTriple when V^2 <= 1e-12.
RelationVerdict expectation_triple_relation(double uA, double uB, double uC, const Vec3& a,
                                            const Vec3& b, const Vec3& c, double radius);

/// Entropic pair region: with fX = f_of_entropy(HX),
/// fA^2 + fB^2 - 2|a.b| fA fB <= (1-(a.b)^2) radius^2. HA, HB in [0, 1].
RelationVerdict entropic_pair_relation(double HA, double HB, double ab, double radius);

/// The unique in-span state with expectations (uA, uB):
/// r = [uA (a-(a.b)b) + uB (b-(a.b)a)] / (1-(a.b)^2).
/// Throws ParallelObservables when |a.b| >= 1 - 1e-12 and NotRealizable when
/// (uA, uB) lies outside the radius-1 expectation ellipse.
QubitState saturating_state_expectations(double uA, double uB, const PauliObservable& A,
                                         const PauliObservable& B);

/// The two pure states with Delta A = dA on the stddev region boundary:
/// r+- = sqrt(1-dA^2) a +- tau (dA / sqrt(1-(a.b)^2)) (b - (a.b)a), with
/// tau = sign(a.b) (+1 when a.b = 0). Returned as (r+, r-); r+ saturates the
/// radius-1 stddev pair relation for every dA, r- only when dA <= |a.b|,
/// dA = 1, or a.b = 0, and Delta B(r+) <= Delta B(r-). Throws
/// ParallelObservables when |a.b| >= 1 - 1e-12.
std::pair<QubitState, QubitState> boundary_states_stddev(double dA, const PauliObservable& A,
                                                         const PauliObservable& B);

/// State-dependent Robertson lower bound |(a x b).r| on Delta A * Delta B.
/// Comparison-only: it induces no state-independent region.
double robertson_bound(const PauliObservable& A, const PauliObservable& B,
                       const QubitState& rho);

/// Busch comparison bounds, as (sum form, quadratic form):
/// dA + dB >= sqrt(1-(a.b)^2) and dA^2 + dB^2 >= 1 - |a.b|.
std::pair<RelationVerdict, RelationVerdict> busch_bounds(double dA, double dB, double ab);

/// Maassen-Uffink entropy-sum bound -2 log2 sqrt((1+|a.b|)/2), so that
/// H(A) + H(B) >= maassen_uffink_bound(a.b).
double maassen_uffink_bound(double ab);

}  // namespace qur
