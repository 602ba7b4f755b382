#include "qur/bloch.hpp"

#include <cmath>
#include <string>

namespace qur {

namespace {

constexpr double kUnitTol = 1e-12;

double clamp_unit_interval(double x, const char* what) {
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

}  // namespace

PauliObservable make_observable(const Vec3& axis) {
    const double n = axis.norm();
    if (n <= kUnitTol) {
        throw ZeroDirection("observable direction has vanishing norm");
    }
    return PauliObservable{axis / n};
}

QubitState make_state(const Vec3& r) {
    const double n = r.norm();
    if (n > 1.0 + kUnitTol) {
        throw NotAState("Bloch vector norm " + std::to_string(n) + " exceeds 1");
    }
    if (n > 1.0) {
        return QubitState{r / n};  // round-off just outside the sphere
    }
    return QubitState{r};
}

double expectation(const PauliObservable& A, const QubitState& rho) {
    const double u = A.axis.dot(rho.r);
    return u < -1.0 ? -1.0 : (u > 1.0 ? 1.0 : u);
}

double std_dev(const PauliObservable& A, const QubitState& rho) {
    const double u = expectation(A, rho);
    return std::sqrt(1.0 - u * u);
}

double shannon_entropy(const PauliObservable& A, const QubitState& rho) {
    return binary_entropy(0.5 * (1.0 + expectation(A, rho)));
}

double binary_entropy(double p) {
    p = clamp_unit_interval(p, "probability");
    if (p == 0.0 || p == 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double binary_entropy_inverse(double y) {
    y = clamp_unit_interval(y, "entropy");
    if (y == 0.0) {
        return 0.0;
    }
    if (y == 1.0) {
        return 0.5;
    }
    // h2 is strictly increasing on [0, 1/2]; 60 halvings take the bracket
    // well below the 1e-14 tolerance. Newton is unusable here: h2' diverges
    // at p = 0.
    double lo = 0.0;
    double hi = 0.5;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double f_of_entropy(double H) {
    return 1.0 - 2.0 * binary_entropy_inverse(H);
}

double expectation_from_std(double delta, int sign) {
    delta = clamp_unit_interval(delta, "standard deviation");
    if (sign != 1 && sign != -1) {
        throw DomainError("sign must be +1 or -1, got " + std::to_string(sign));
    }
    return sign * std::sqrt(1.0 - delta * delta);
}

}  // namespace qur
