#include "qur/observable_set.hpp"

#include <string>

#include <Eigen/SVD>

namespace qur {

namespace {

constexpr double kSingularValueCutoff = 1e-10;  // relative to sigma_max
constexpr double kRealizableTol = 1e-9;

void check_length(const ObservableSet& S, const ExpectationVector& u) {
    if (u.size() != S.size()) {
        throw DimensionMismatch("expectation tuple has length " + std::to_string(u.size()) +
                                ", set has " + std::to_string(S.size()) + " observables");
    }
}

}  // namespace

ObservableSet build_set(const std::vector<Vec3>& axes) {
    if (axes.empty()) {
        throw DimensionMismatch("observable set needs at least one direction");
    }
    ObservableSet S;
    S.observables.reserve(axes.size());
    S.matrix.resize(static_cast<Eigen::Index>(axes.size()), 3);
    for (std::size_t i = 0; i < axes.size(); ++i) {
        S.observables.push_back(make_observable(axes[i]));
        S.matrix.row(static_cast<Eigen::Index>(i)) = S.observables.back().axis.transpose();
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(S.matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double cutoff = kSingularValueCutoff * sigma(0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
    S.span_rank = 0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        if (sigma(k) > cutoff) {
            inv(k) = 1.0 / sigma(k);
            ++S.span_rank;
        }
    }
    S.pseudoinverse = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    S.coeffs = S.pseudoinverse.transpose() * S.pseudoinverse;
    return S;
}

ExpectationVector expectations_of(const ObservableSet& S, const QubitState& rho) {
    return S.matrix * rho.r;
}

Vec3 project_onto_span(const ObservableSet& S, const Vec3& r) {
    return S.pseudoinverse * (S.matrix * r);
}

QubitState reconstruct_state(const ObservableSet& S, const ExpectationVector& u) {
    check_length(S, u);
    Vec3 r = S.pseudoinverse * u;
    const double n = r.norm();
    if (n > 1.0 + kRealizableTol) {
        throw NotRealizable("minimum-norm Bloch vector has norm " + std::to_string(n));
    }
    if (n > 1.0) {
        r /= n;
    }
    return make_state(r);
}

bool realizable(const ObservableSet& S, const ExpectationVector& u, double radius) {
    check_length(S, u);
    if (radius < 0.0 || radius > 1.0) {
        throw DomainError("radius must lie in [0, 1], got " + std::to_string(radius));
    }
    const Vec3 r = S.pseudoinverse * u;
    const double residual = (S.matrix * r - u).lpNorm<Eigen::Infinity>();
    return residual <= kRealizableTol && r.norm() <= radius + kRealizableTol;
}

}  // namespace qur
