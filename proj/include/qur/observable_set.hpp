#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qur/bloch.hpp"
#include "qur/errors.hpp"

namespace qur {

using ExpectationVector = Eigen::VectorXd;

// A finite set of Pauli observables together with the linear-algebra data
// their joint expectations live on: the n x 3 direction matrix M (rows are
// the Bloch axes), its Moore-Penrose pseudoinverse, the coefficient matrix
// (M+)^T M+ of the quadratic form sum_ij m_ij <A_i><A_j>, and the dimension
// of the span of the axes.
struct ObservableSet {
    std::vector<PauliObservable> observables;
    Eigen::Matrix<double, Eigen::Dynamic, 3> matrix;
    Eigen::Matrix<double, 3, Eigen::Dynamic> pseudoinverse;
    Eigen::MatrixXd coeffs;
    int span_rank = 0;

    int size() const { return static_cast<int>(observables.size()); }
};

/// Builds the set from raw direction vectors (each normalized; ZeroDirection
/// on a vanishing one). Needs at least one direction (DimensionMismatch
/// otherwise). The pseudoinverse comes from an SVD with singular values below
/// 1e-10 * sigma_max treated as zero; span_rank counts the survivors.
ObservableSet build_set(const std::vector<Vec3>& axes);

/// The tuple (<A_1>, ..., <A_n>) = M r for a state.
ExpectationVector expectations_of(const ObservableSet& S, const QubitState& rho);

/// Orthogonal projection (M+ M) r of a vector onto the span of the axes.
Vec3 project_onto_span(const ObservableSet& S, const Vec3& r);

/// Minimum-norm state reproducing the expectation tuple u: r = M+ u. Throws
/// DimensionMismatch if u has the wrong length and NotRealizable when
/// |M+ u| > 1 + 1e-9 (no state can reproduce u). When u is not in the range
/// of M the returned state realizes the least-squares fit M M+ u instead;
/// check realizable() first if exact reproduction is required.
QubitState reconstruct_state(const ObservableSet& S, const ExpectationVector& u);

/// True when some state with |r| <= radius has expectations u: the residual
/// |M M+ u - u| must vanish (inf-norm tolerance 1e-9) and |M+ u| must not
/// exceed radius + 1e-9. radius must be in [0, 1].
bool realizable(const ObservableSet& S, const ExpectationVector& u, double radius);

}  // namespace qur
