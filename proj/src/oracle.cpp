#include "qur/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include <Eigen/SVD>

namespace qur {

namespace {

constexpr double kRealizableTol = 1e-9;
constexpr double kParallelTol = 1e-12;
constexpr std::size_t kPlanarSweepCount = 8192;
constexpr std::size_t kGridPointCap = 200'000'000;

// Uniform doubles and normals are derived from the raw 64-bit stream by hand
// so replay does not depend on any stdlib distribution implementation.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double normal() {  // Marsaglia polar
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double x = 0.0;
        double y = 0.0;
        double s = 0.0;
        do {
            x = 2.0 * uniform01() - 1.0;
            y = 2.0 * uniform01() - 1.0;
            s = x * x + y * y;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = y * m;
        has_spare_ = true;
        return x * m;
    }

    Vec3 unit_vector() {
        Vec3 v;
        double n = 0.0;
        do {
            v = Vec3(normal(), normal(), normal());
            n = v.norm();
        } while (n < 1e-12);
        return v / n;
    }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

enum class RelKind {
    Lemma2,
    Theorem1,
    ProductForm,
    MonotoneClosure,
    DisjunctiveClosure,
    BuschSum,
    BuschQuadratic,
    EntropicPair,
    MaassenUffink,
    Lemma3,
    Lemma3Constrained,
};

struct CatalogEntry {
    RelKind kind;
    UncertaintyMeasure measure;
    bool pair_only;
};

CatalogEntry lookup_relation(const std::string& id) {
    if (id == "lemma2") return {RelKind::Lemma2, UncertaintyMeasure::Expectation, true};
    if (id == "theorem1") return {RelKind::Theorem1, UncertaintyMeasure::StdDev, true};
    if (id == "product_form") return {RelKind::ProductForm, UncertaintyMeasure::StdDev, true};
    if (id == "monotone_closure")
        return {RelKind::MonotoneClosure, UncertaintyMeasure::StdDev, true};
    if (id == "disjunctive_closure")
        return {RelKind::DisjunctiveClosure, UncertaintyMeasure::StdDev, true};
    if (id == "busch_sum") return {RelKind::BuschSum, UncertaintyMeasure::StdDev, true};
    if (id == "busch_quadratic")
        return {RelKind::BuschQuadratic, UncertaintyMeasure::StdDev, true};
    if (id == "entropic_pair")
        return {RelKind::EntropicPair, UncertaintyMeasure::ShannonEntropy, true};
    if (id == "maassen_uffink")
        return {RelKind::MaassenUffink, UncertaintyMeasure::ShannonEntropy, true};
    if (id == "lemma3") return {RelKind::Lemma3, UncertaintyMeasure::Expectation, false};
    if (id == "lemma3_constrained")
        return {RelKind::Lemma3Constrained, UncertaintyMeasure::Expectation, false};
    throw UnknownRelation("no relation named '" + id + "' in the certification catalog");
}

double measure_value(double u, UncertaintyMeasure m) {
    switch (m) {
        case UncertaintyMeasure::Expectation:
            return u;
        case UncertaintyMeasure::StdDev:
            return std::sqrt(std::max(0.0, 1.0 - u * u));
        case UncertaintyMeasure::ShannonEntropy:
            return binary_entropy(0.5 * (1.0 + u));
    }
    return u;
}

// Membership slack of one point of the relation's measure space, with the
// region convention: satisfied <=> slack >= -1e-9. Pair kinds read t[0],
// t[1]; the lemma3 family reads the full expectation tuple.
double relation_slack(const CatalogEntry& e, const ObservableSet& S, double ab,
                      const double* t) {
    switch (e.kind) {
        case RelKind::Lemma2:
            return expectation_pair_relation(t[0], t[1], ab, 1.0).slack;
        case RelKind::Theorem1:
            return stddev_pair_relation(t[0], t[1], ab, 1.0).slack;
        case RelKind::ProductForm:
            return equivalent_product_form(t[0], t[1], ab).slack;
        case RelKind::MonotoneClosure:
            return monotone_closure_relation(t[0], t[1], ab, 1.0).slack;
        case RelKind::DisjunctiveClosure:
            return disjunctive_closure_relation(t[0], t[1], ab).slack;
        case RelKind::BuschSum:
            return busch_bounds(t[0], t[1], ab).first.slack;
        case RelKind::BuschQuadratic:
            return busch_bounds(t[0], t[1], ab).second.slack;
        case RelKind::EntropicPair:
            return entropic_pair_relation(t[0], t[1], ab, 1.0).slack;
        case RelKind::MaassenUffink:
            return t[0] + t[1] - maassen_uffink_bound(ab);
        case RelKind::Lemma3:
        case RelKind::Lemma3Constrained: {
            double quad = 0.0;
            for (Eigen::Index j = 0; j < 3; ++j) {
                double p = 0.0;
                for (int i = 0; i < S.size(); ++i) {
                    p += S.pseudoinverse(j, i) * t[i];
                }
                quad += p * p;
            }
            return 1.0 - quad;
        }
    }
    return 0.0;
}

// argmin_{|r| <= radius} |u - M r|. The unconstrained minimum-norm solution
// is M+ u; past the ball it moves along the regularization path
// r(lambda) = (M^T M + lambda I)^-1 M^T u, whose norm decreases strictly in
// lambda, so a bisection pins |r| = radius.
Vec3 ridge_project(const ObservableSet& S, const ExpectationVector& u, double radius) {
    Vec3 r = S.pseudoinverse * u;
    const double n = r.norm();
    if (n <= radius) {
        return r;
    }
    if (radius == 0.0) {
        return Vec3::Zero();
    }
    const Eigen::Matrix3d A = S.matrix.transpose() * S.matrix;
    const Vec3 b = S.matrix.transpose() * u;
    const auto solve = [&](double lambda) -> Vec3 {
        return (A + lambda * Eigen::Matrix3d::Identity()).ldlt().solve(b);
    };
    double hi = 1.0;
    while (solve(hi).norm() > radius) {
        hi *= 2.0;
        if (hi > 1e30) {
            break;
        }
    }
    double lo = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (solve(mid).norm() > radius) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    r = solve(hi);
    const double rn = r.norm();
    if (rn > radius) {
        r *= radius / rn;
    }
    return r;
}

// Uniform-bucket nearest-neighbor index over a square; good enough for the
// dense attained clouds the certifier builds.
class PointIndex2d {
  public:
    PointIndex2d(double lo, double hi, double cell)
        : lo_(lo),
          cell_(cell),
          n_(std::max(1, static_cast<int>(std::floor((hi - lo) / cell)) + 1)),
          buckets_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {}

    void insert(double x, double y) {
        buckets_[cell_of(x, y)].push_back({x, y});
        ++count_;
    }

    std::size_t size() const { return count_; }

    double nearest(double x, double y) const {
        if (count_ == 0) {
            return std::numeric_limits<double>::infinity();
        }
        const int cx = clamp_idx(x);
        const int cy = clamp_idx(y);
        double best_sq = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring < 2 * n_; ++ring) {
            if (best_sq < std::numeric_limits<double>::infinity()) {
                const double reachable = (ring - 1) * cell_;
                if (reachable > 0.0 && reachable * reachable > best_sq) {
                    break;
                }
            }
            const int x0 = cx - ring;
            const int x1 = cx + ring;
            const int y0 = cy - ring;
            const int y1 = cy + ring;
            for (int ix = x0; ix <= x1; ++ix) {
                for (int iy = y0; iy <= y1; ++iy) {
                    if (ring > 0 && ix != x0 && ix != x1 && iy != y0 && iy != y1) {
                        continue;  // interior of the ring was already scanned
                    }
                    if (ix < 0 || ix >= n_ || iy < 0 || iy >= n_) {
                        continue;
                    }
                    for (const auto& p :
                         buckets_[static_cast<std::size_t>(iy) * static_cast<std::size_t>(n_) +
                                  static_cast<std::size_t>(ix)]) {
                        const double dx = p[0] - x;
                        const double dy = p[1] - y;
                        best_sq = std::min(best_sq, dx * dx + dy * dy);
                    }
                }
            }
        }
        return std::sqrt(best_sq);
    }

  private:
    int clamp_idx(double v) const {
        const int i = static_cast<int>(std::floor((v - lo_) / cell_));
        return std::max(0, std::min(n_ - 1, i));
    }
    std::size_t cell_of(double x, double y) const {
        return static_cast<std::size_t>(clamp_idx(y)) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(clamp_idx(x));
    }

    double lo_;
    double cell_;
    int n_;
    std::vector<std::vector<std::array<double, 2>>> buckets_;
    std::size_t count_ = 0;
};

std::vector<QubitState> planar_sweep(const Vec3& e1, const Vec3& e2, std::size_t count) {
    Sampler s;
    s.mode = SampleMode::PlanarGrid;
    s.count = count;
    s.plane_e1 = e1;
    s.plane_e2 = e2;
    return sample_states(s);
}

// The two coordinates a pair relation sees, in its measure space.
std::array<double, 2> pair_tuple(const ObservableSet& S, const QubitState& rho,
                                 UncertaintyMeasure m) {
    return {measure_value(S.observables[0].axis.dot(rho.r), m),
            measure_value(S.observables[1].axis.dot(rho.r), m)};
}

}  // namespace

std::vector<QubitState> sample_states(const Sampler& s) {
    std::vector<QubitState> out;
    out.reserve(s.count);
    switch (s.mode) {
        case SampleMode::PureUniform: {
            RandomStream rng(s.seed);
            for (std::size_t i = 0; i < s.count; ++i) {
                out.push_back(QubitState{rng.unit_vector()});
            }
            break;
        }
        case SampleMode::BallUniform: {
            RandomStream rng(s.seed);
            for (std::size_t i = 0; i < s.count; ++i) {
                const Vec3 dir = rng.unit_vector();
                out.push_back(QubitState{std::cbrt(rng.uniform01()) * dir});
            }
            break;
        }
        case SampleMode::PlanarGrid: {
            const double n1 = s.plane_e1.norm();
            if (n1 <= 1e-12) {
                throw DomainError("planar sampler: first basis vector vanishes");
            }
            const Vec3 e1 = s.plane_e1 / n1;
            Vec3 e2 = s.plane_e2 - s.plane_e2.dot(e1) * e1;
            const double n2 = e2.norm();
            if (n2 <= 1e-12) {
                throw DomainError("planar sampler: basis vectors are parallel");
            }
            e2 /= n2;
            for (std::size_t i = 0; i < s.count; ++i) {
                const double theta =
                    2.0 * M_PI * static_cast<double>(i) / static_cast<double>(s.count);
                out.push_back(QubitState{std::cos(theta) * e1 + std::sin(theta) * e2});
            }
            break;
        }
    }
    return out;
}

std::vector<std::vector<double>> attainable_region(const ObservableSet& S,
                                                   UncertaintyMeasure measure,
                                                   const Sampler& s) {
    const std::vector<QubitState> states = sample_states(s);
    std::vector<std::vector<double>> out;
    out.reserve(states.size());
    for (const QubitState& rho : states) {
        std::vector<double> tuple(static_cast<std::size_t>(S.size()));
        for (int i = 0; i < S.size(); ++i) {
            tuple[static_cast<std::size_t>(i)] =
                measure_value(S.observables[static_cast<std::size_t>(i)].axis.dot(rho.r),
                              measure);
        }
        out.push_back(std::move(tuple));
    }
    return out;
}

bool relation_claimed_tight(const ObservableSet& S, const std::string& relation_id) {
    const CatalogEntry e = lookup_relation(relation_id);
    switch (e.kind) {
        case RelKind::Lemma2:
        case RelKind::Theorem1:
        case RelKind::ProductForm:
        case RelKind::EntropicPair:
        case RelKind::Lemma3Constrained:
            return true;
        case RelKind::Lemma3:
            // With null directions the bare quadratic form cannot see the
            // components of u outside the span, so it only claims the region
            // when there are none.
            return S.size() == S.span_rank;
        default:
            return false;
    }
}

TightnessReport certify_tightness(const ObservableSet& S, const std::string& relation_id,
                                  double grid_resolution, const Sampler& s, double epsilon) {
    const CatalogEntry entry = lookup_relation(relation_id);
    const std::size_t n = static_cast<std::size_t>(S.size());
    if (entry.pair_only && n != 2) {
        throw DimensionMismatch("relation '" + relation_id + "' needs exactly 2 observables, set has " +
                                std::to_string(n));
    }
    if (!(grid_resolution > 0.0 && grid_resolution <= 0.1)) {
        throw DomainError("grid resolution must lie in (0, 0.1], got " +
                          std::to_string(grid_resolution));
    }
    if (epsilon <= 0.0) {
        epsilon = 2.0 * grid_resolution;
    }
    if (epsilon < grid_resolution) {
        throw DomainError("epsilon must be at least the grid resolution");
    }

    const double ab =
        entry.pair_only ? S.observables[0].axis.dot(S.observables[1].axis) : 0.0;

    TightnessReport rep;
    rep.relation_id = relation_id;
    rep.grid_resolution = grid_resolution;
    rep.epsilon = epsilon;
    rep.sampler = s;
    rep.claimed_tight = relation_claimed_tight(S, relation_id);
    rep.params["n"] = static_cast<double>(n);
    rep.params["span_rank"] = static_cast<double>(S.span_rank);
    rep.params["radius"] = 1.0;
    if (entry.pair_only) {
        rep.params["ab"] = ab;
    }

    // Soundness: every sampled state must land inside the relation's region.
    // Pure planar sweeps are always added for pairs so the boundary itself is
    // represented among the attained points.
    std::vector<QubitState> states = sample_states(s);
    const bool sweepable = n == 2 && std::abs(ab) < 1.0 - kParallelTol;
    if (sweepable) {
        const std::vector<QubitState> sweep =
            planar_sweep(S.observables[0].axis, S.observables[1].axis, kPlanarSweepCount);
        states.insert(states.end(), sweep.begin(), sweep.end());
    }

    const double box_lo = entry.measure == UncertaintyMeasure::Expectation ? -1.0 : 0.0;
    const double box_hi = 1.0;
    PointIndex2d cloud(box_lo, box_hi, std::max(grid_resolution, 1e-4));

    rep.worst_slack = std::numeric_limits<double>::infinity();
    ExpectationVector u_state(static_cast<Eigen::Index>(n));
    std::vector<double> tuple(n);
    for (const QubitState& rho : states) {
        u_state = S.matrix * rho.r;
        for (std::size_t i = 0; i < n; ++i) {
            tuple[i] = measure_value(u_state(static_cast<Eigen::Index>(i)), entry.measure);
        }
        const double slack = relation_slack(entry, S, ab, tuple.data());
        rep.worst_slack = std::min(rep.worst_slack, slack);
        if (slack < -kSaturationTol) {
            ++rep.soundness_violations;
        }
        if (entry.kind == RelKind::Lemma3Constrained) {
            // The side-condition must also hold on real states.
            const double residual =
                (S.matrix * (S.pseudoinverse * u_state) - u_state).lpNorm<Eigen::Infinity>();
            if (residual > kRealizableTol) {
                ++rep.soundness_violations;
            }
        }
        if (entry.pair_only) {
            cloud.insert(tuple[0], tuple[1]);
        }
    }
    rep.samples_used = states.size();

    // Completeness: walk the grid of the relation's measure space, keep the
    // points the relation accepts, and measure how far each sits from an
    // attained point. Attained points come from explicit reconstruction
    // (a candidate state is built, then pushed forward through the ordinary
    // expectation pipeline) with the sampled cloud as fallback.
    double gap = 0.0;
    std::size_t checked = 0;

    const auto expectation_distance = [&](const ExpectationVector& u) {
        const Vec3 r = ridge_project(S, u, 1.0);
        return (S.matrix * r - u).norm();
    };

    if (entry.pair_only) {
        const int steps = static_cast<int>(std::round((box_hi - box_lo) / grid_resolution));
        ExpectationVector u(2);
        for (int ix = 0; ix <= steps; ++ix) {
            const double x = std::min(box_hi, box_lo + ix * grid_resolution);
            for (int iy = 0; iy <= steps; ++iy) {
                const double y = std::min(box_hi, box_lo + iy * grid_resolution);
                const double p[2] = {x, y};
                if (relation_slack(entry, S, ab, p) < -kSaturationTol) {
                    continue;
                }
                ++checked;
                double best = std::numeric_limits<double>::infinity();
                const int sign_combos =
                    entry.measure == UncertaintyMeasure::Expectation ? 1 : 4;
                for (int sc = 0; sc < sign_combos && best > 1e-12; ++sc) {
                    const double sx = (sc & 1) ? -1.0 : 1.0;
                    const double sy = (sc & 2) ? -1.0 : 1.0;
                    if (entry.measure == UncertaintyMeasure::Expectation) {
                        u << x, y;
                    } else if (entry.measure == UncertaintyMeasure::StdDev) {
                        u << sx * std::sqrt(std::max(0.0, 1.0 - x * x)),
                            sy * std::sqrt(std::max(0.0, 1.0 - y * y));
                    } else {
                        u << sx * f_of_entropy(x), sy * f_of_entropy(y);
                    }
                    const Vec3 r = ridge_project(S, u, 1.0);
                    const QubitState cand{r};
                    const std::array<double, 2> fwd = pair_tuple(S, cand, entry.measure);
                    const double dx = fwd[0] - x;
                    const double dy = fwd[1] - y;
                    best = std::min(best, std::sqrt(dx * dx + dy * dy));
                }
                if (best > 0.25 * epsilon) {
                    best = std::min(best, cloud.nearest(x, y));
                }
                gap = std::max(gap, best);
            }
        }
    } else if (entry.kind == RelKind::Lemma3) {
        // Full n-dimensional grid; no side-condition, so satisfying points
        // may sit far outside the realizable slice, and the exact distance
        // min_{|r|<=1} |u - M r| exposes that.
        const int steps = static_cast<int>(std::round(2.0 / grid_resolution));
        const std::size_t total = [&] {
            std::size_t t = 1;
            for (std::size_t i = 0; i < n; ++i) {
                if (t > kGridPointCap / static_cast<std::size_t>(steps + 1)) {
                    throw DomainError("grid too fine for " + std::to_string(n) +
                                      " observables");
                }
                t *= static_cast<std::size_t>(steps + 1);
            }
            return t;
        }();
        (void)total;
        std::vector<int> idx(n, 0);
        ExpectationVector u(static_cast<Eigen::Index>(n));
        bool done = false;
        while (!done) {
            for (std::size_t i = 0; i < n; ++i) {
                u(static_cast<Eigen::Index>(i)) = std::min(1.0, -1.0 + idx[i] * grid_resolution);
            }
            if (relation_slack(entry, S, ab, u.data()) >= -kSaturationTol) {
                ++checked;
                gap = std::max(gap, expectation_distance(u));
            }
            std::size_t k = 0;
            while (k < n && ++idx[k] > steps) {
                idx[k] = 0;
                ++k;
            }
            done = k == n;
        }
    } else {
        // Constrained lemma3: the side-condition M M+ u = u is applied first,
        // so the grid lives on the realizable slice span(columns of M),
        // parametrized by an orthonormal basis from the SVD.
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(S.matrix,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sigma = svd.singularValues();
        const double cutoff = 1e-10 * sigma(0);
        std::vector<Eigen::VectorXd> basis;
        for (Eigen::Index k = 0; k < sigma.size(); ++k) {
            if (sigma(k) > cutoff) {
                basis.push_back(svd.matrixU().col(k));
            }
        }
        const std::size_t rank = basis.size();
        const double t_max =
            grid_resolution * std::ceil(std::sqrt(static_cast<double>(n)) / grid_resolution);
        const int steps = static_cast<int>(std::round(2.0 * t_max / grid_resolution));
        {
            double total = 1.0;
            for (std::size_t i = 0; i < rank; ++i) {
                total *= steps + 1;
            }
            if (total > static_cast<double>(kGridPointCap)) {
                throw DomainError("grid too fine for the realizable slice");
            }
        }

        // Hot loop over up to ~1e8 slice points: flat buffers, no Eigen
        // temporaries.
        std::vector<double> B(n * rank);
        for (std::size_t k = 0; k < rank; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                B[i * rank + k] = basis[k](static_cast<Eigen::Index>(i));
            }
        }
        std::vector<double> P(3 * n);
        std::vector<double> M(n * 3);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                P[j * n + i] = S.pseudoinverse(static_cast<Eigen::Index>(j),
                                               static_cast<Eigen::Index>(i));
                M[i * 3 + j] =
                    S.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
        std::vector<int> idx(rank, 0);
        std::vector<double> t(rank);
        std::vector<double> u(n);
        double r3[3];
        bool done = rank == 0;
        const double n_d = static_cast<double>(n);
        while (!done) {
            double tnorm_sq = 0.0;
            for (std::size_t k = 0; k < rank; ++k) {
                t[k] = -t_max + idx[k] * grid_resolution;
                tnorm_sq += t[k] * t[k];
            }
            // |u| = |t|, and |u|_inf <= 1 forces |u| <= sqrt(n).
            if (tnorm_sq <= n_d + 1e-12) {
                bool inside = true;
                for (std::size_t i = 0; i < n; ++i) {
                    double ui = 0.0;
                    for (std::size_t k = 0; k < rank; ++k) {
                        ui += B[i * rank + k] * t[k];
                    }
                    if (std::abs(ui) > 1.0 + 1e-12) {
                        inside = false;
                        break;
                    }
                    u[i] = ui;
                }
                if (inside) {
                    double quad = 0.0;
                    for (std::size_t j = 0; j < 3; ++j) {
                        double p = 0.0;
                        for (std::size_t i = 0; i < n; ++i) {
                            p += P[j * n + i] * u[i];
                        }
                        r3[j] = p;
                        quad += p * p;
                    }
                    if (1.0 - quad >= -kSaturationTol) {
                        ++checked;
                        double scale = 1.0;
                        if (quad > 1.0) {
                            scale = 1.0 / std::sqrt(quad);
                        }
                        double dist_sq = 0.0;
                        for (std::size_t i = 0; i < n; ++i) {
                            double fwd = 0.0;
                            for (std::size_t j = 0; j < 3; ++j) {
                                fwd += M[i * 3 + j] * r3[j] * scale;
                            }
                            const double diff = fwd - u[i];
                            dist_sq += diff * diff;
                        }
                        gap = std::max(gap, std::sqrt(dist_sq));
                    }
                }
            }
            std::size_t k = 0;
            while (k < rank && ++idx[k] > steps) {
                idx[k] = 0;
                ++k;
            }
            done = k == rank;
        }
    }

    rep.completeness_gap = gap;
    rep.grid_points_checked = checked;
    return rep;
}

ExtremalResult extremal_scan(const ObservableSet& S, UncertaintyMeasure measure,
                             ExtremalObjective objective, double resolution) {
    (void)objective;  // both extremal views are computed from the same scan
    if (S.size() != 2) {
        throw UnsupportedSetSize("extremal scan is defined for two observables, set has " +
                                 std::to_string(S.size()));
    }
    if (!(resolution > 0.0 && resolution <= 0.01)) {
        throw DomainError("resolution must lie in (0, 0.01], got " +
                          std::to_string(resolution));
    }
    const Vec3 a = S.observables[0].axis;
    const Vec3 b = S.observables[1].axis;
    if (std::abs(a.dot(b)) >= 1.0 - kParallelTol) {
        throw ParallelObservables("extremal scan needs non-parallel observables");
    }

    const double lo = measure == UncertaintyMeasure::Expectation ? -1.0 : 0.0;
    const std::size_t bins =
        static_cast<std::size_t>(std::ceil((1.0 - lo) / resolution)) + 1;
    std::vector<EnvelopePoint> best(bins);
    std::vector<bool> filled(bins, false);

    const std::size_t steps =
        static_cast<std::size_t>(std::ceil(2.0 * M_PI / resolution));
    const std::vector<QubitState> sweep = planar_sweep(a, b, steps);

    ExtremalResult result;
    result.min_sum = std::numeric_limits<double>::infinity();
    for (const QubitState& rho : sweep) {
        const std::array<double, 2> t = pair_tuple(S, rho, measure);
        result.min_sum = std::min(result.min_sum, t[0] + t[1]);
        std::size_t bin = static_cast<std::size_t>(
            std::max(0.0, std::floor((t[0] - lo) / resolution)));
        bin = std::min(bin, bins - 1);
        if (!filled[bin] || t[1] < best[bin].y) {
            filled[bin] = true;
            best[bin] = {t[0], t[1]};
        }
    }
    for (std::size_t i = 0; i < bins; ++i) {
        if (filled[i]) {
            result.curve.push_back(best[i]);
        }
    }
    std::sort(result.curve.begin(), result.curve.end(),
              [](const EnvelopePoint& p, const EnvelopePoint& q) { return p.x < q.x; });
    return result;
}

}  // namespace qur
