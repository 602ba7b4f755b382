#include "qur/export.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "qur/povm.hpp"
#include "qur/relations.hpp"

namespace qur {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kParallelTol = 1e-12;
constexpr double kNormalizationWarnTol = 1e-6;

std::string measure_token(UncertaintyMeasure m) {
    switch (m) {
        case UncertaintyMeasure::Expectation:
            return "expectation";
        case UncertaintyMeasure::StdDev:
            return "stddev";
        case UncertaintyMeasure::ShannonEntropy:
            return "entropy";
    }
    return "stddev";
}

std::string mode_token(SampleMode m) {
    switch (m) {
        case SampleMode::PureUniform:
            return "PureUniform";
        case SampleMode::BallUniform:
            return "BallUniform";
        case SampleMode::PlanarGrid:
            return "PlanarGrid";
    }
    return "PureUniform";
}

std::string join_doubles(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += format_double(v[i]);
    }
    return out;
}

double measure_value_of(double u, UncertaintyMeasure m) {
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

// Shared ordered config echo: the CSV `#` lines and the JSON config object
// are built from the same list so the two stay in lockstep.
using MetaList = std::vector<std::pair<std::string, std::string>>;

std::string command_token(Command c) {
    switch (c) {
        case Command::Region:
            return "region";
        case Command::Check:
            return "check";
        case Command::Saturate:
            return "saturate";
        case Command::Verify:
            return "verify";
        case Command::Bounds:
            return "bounds";
        case Command::Coeffs:
            return "coeffs";
    }
    return "check";
}

struct LoadedSet {
    ObservableSet S;                // projective: the normalized axes;
                                    // POVM mode: the reduced unit directions
    std::vector<BinaryPovm> povms;  // empty in projective mode
    bool povm_mode = false;
};

LoadedSet load_observables(const RunConfig& cfg, std::vector<std::string>& warnings) {
    if (cfg.axes.empty()) {
        throw DimensionMismatch("at least one --obs direction is required");
    }
    LoadedSet out;
    out.povm_mode = !cfg.offsets.empty();
    if (out.povm_mode && cfg.offsets.size() != cfg.axes.size()) {
        throw DimensionMismatch("offset count does not match observable count");
    }
    std::vector<Vec3> axes;
    for (std::size_t i = 0; i < cfg.axes.size(); ++i) {
        if (out.povm_mode) {
            const BinaryPovm P = make_povm(cfg.offsets[i], cfg.axes[i]);
            out.povms.push_back(P);
            axes.push_back(reduce_to_pauli(P).direction.axis);
        } else {
            const double n = cfg.axes[i].norm();
            if (std::abs(n - 1.0) > kNormalizationWarnTol) {
                warnings.push_back("observable " + std::to_string(i + 1) +
                                   " renormalized (input norm " + format_double(n) + ")");
            }
            axes.push_back(cfg.axes[i]);
        }
    }
    out.S = build_set(axes);
    return out;
}

MetaList base_meta(const RunConfig& cfg, const LoadedSet& L) {
    MetaList meta;
    meta.emplace_back("command", command_token(cfg.command));
    meta.emplace_back("measure", measure_token(cfg.measure));
    meta.emplace_back("n", std::to_string(L.S.size()));
    for (int i = 0; i < L.S.size(); ++i) {
        std::string v = format_double(L.S.observables[static_cast<std::size_t>(i)].axis.x()) +
                        "," +
                        format_double(L.S.observables[static_cast<std::size_t>(i)].axis.y()) +
                        "," +
                        format_double(L.S.observables[static_cast<std::size_t>(i)].axis.z());
        if (L.povm_mode) {
            v += "," + format_double(L.povms[static_cast<std::size_t>(i)].alpha);
            meta.emplace_back("povm_" + std::to_string(i + 1),
                              join_doubles({L.povms[static_cast<std::size_t>(i)].a.x(),
                                            L.povms[static_cast<std::size_t>(i)].a.y(),
                                            L.povms[static_cast<std::size_t>(i)].a.z(),
                                            L.povms[static_cast<std::size_t>(i)].alpha}));
        } else {
            meta.emplace_back("obs_" + std::to_string(i + 1), v);
        }
    }
    if (L.S.size() == 2) {
        meta.emplace_back("ab", format_double(L.S.observables[0].axis.dot(L.S.observables[1].axis)));
    }
    return meta;
}

std::string csv_meta(const MetaList& meta) {
    std::string out;
    for (const auto& [k, v] : meta) {
        out += "# " + k + "=" + v + "\n";
    }
    return out;
}

ordered_json json_meta(const MetaList& meta) {
    ordered_json cfg = ordered_json::object();
    for (const auto& [k, v] : meta) {
        cfg[k] = v;
    }
    return cfg;
}

std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

// One evaluated relation row shared by the check/saturate emitters.
struct RelationRow {
    std::string relation;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool satisfied = false;
    bool saturated = false;
    std::string note;
};

RelationRow row_from(const std::string& name, const RelationVerdict& v,
                     const std::string& note = "") {
    RelationRow r;
    r.relation = name;
    r.lhs = v.lhs;
    r.rhs = v.rhs;
    r.slack = v.slack;
    r.satisfied = v.satisfied;
    r.saturated = v.saturated;
    r.note = v.unattainable ? (note.empty() ? "unattainable at this purity" : note) : note;
    return r;
}

RunResult emit_rows(const RunConfig& cfg, const MetaList& meta,
                    const std::vector<RelationRow>& rows, std::vector<std::string> warnings) {
    RunResult res;
    res.warnings = std::move(warnings);
    if (cfg.format == OutputFormat::Csv) {
        std::string out = csv_meta(meta);
        out += "relation,lhs,rhs,slack,satisfied,saturated,note\n";
        for (const RelationRow& r : rows) {
            out += r.relation + "," + format_double(r.lhs) + "," + format_double(r.rhs) + "," +
                   format_double(r.slack) + "," + (r.satisfied ? "true" : "false") + "," +
                   (r.saturated ? "true" : "false") + "," + r.note + "\n";
        }
        res.output = out;
    } else {
        ordered_json j;
        j["command"] = meta.front().second;
        j["config"] = json_meta(meta);
        ordered_json arr = ordered_json::array();
        for (const RelationRow& r : rows) {
            ordered_json o;
            o["relation"] = r.relation;
            o["lhs"] = r.lhs;
            o["rhs"] = r.rhs;
            o["slack"] = r.slack;
            o["satisfied"] = r.satisfied;
            o["saturated"] = r.saturated;
            o["note"] = r.note;
            arr.push_back(o);
        }
        j["relations"] = arr;
        res.output = dump_json(j);
    }
    return res;
}

// ---------------------------------------------------------------------------
// region

struct Curve {
    std::string label;
    double radius = 1.0;
    // each point: params followed by one value per observable
    std::vector<std::vector<double>> points;
};

void check_radius_list(const std::vector<double>& radii) {
    for (double r : radii) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw DomainError("radius must lie in [0, 1], got " + format_double(r));
        }
    }
}

// Pair boundary: image of the in-plane states r(t) = radius (cos t a + sin t e2)
// where e2 = tau * unit(b - (a.b) a), tau = sign(a.b) (+1 at 0). On
// t in [gamma - pi/2, pi/2] (gamma = arccos |a.b|) the image saturates the
// pair relation of the chosen measure at that radius; the frontier is closed
// by the value = 1 segments (members only) for the folded measures.
std::vector<Curve> pair_region_curves(const ObservableSet& S, UncertaintyMeasure measure,
                                      const std::vector<double>& radii,
                                      std::size_t boundary_points) {
    const Vec3 a = S.observables[0].axis;
    const Vec3 b = S.observables[1].axis;
    const double ab = a.dot(b);
    if (std::abs(ab) >= 1.0 - kParallelTol) {
        throw ParallelObservables("region emission needs non-parallel observables");
    }
    const double tau = ab < 0.0 ? -1.0 : 1.0;
    const Vec3 e2 = tau * (b - ab * a).normalized();
    const double gamma = std::acos(std::min(1.0, std::abs(ab)));

    const std::size_t N = std::max<std::size_t>(boundary_points, 2);
    const std::size_t K = std::max<std::size_t>(boundary_points / 4, 2);
    std::vector<Curve> curves;

    for (double radius : radii) {
        Curve boundary;
        boundary.label = "boundary";
        boundary.radius = radius;
        const bool full_circle = measure == UncertaintyMeasure::Expectation;
        const double t0 = full_circle ? 0.0 : gamma - M_PI / 2.0;
        const double t1 = full_circle ? 2.0 * M_PI : M_PI / 2.0;
        for (std::size_t k = 0; k < N; ++k) {
            // open interval for the full circle (t1 would repeat t0)
            const double span = full_circle ? static_cast<double>(N)
                                            : static_cast<double>(N - 1);
            const double t = t0 + (t1 - t0) * static_cast<double>(k) / span;
            const Vec3 r = radius * (std::cos(t) * a + std::sin(t) * e2);
            boundary.points.push_back({t, measure_value_of(a.dot(r), measure),
                                       measure_value_of(b.dot(r), measure)});
        }
        curves.push_back(std::move(boundary));

        if (measure != UncertaintyMeasure::Expectation) {
            // frontier segments at value 1 (uncertainty maximal for one
            // observable): members, saturating only at the corner
            const double u_star = radius * std::sqrt(std::max(0.0, 1.0 - ab * ab));
            const double v_star = measure_value_of(u_star, measure);
            Curve edge_b;
            edge_b.label = "edge_b";
            edge_b.radius = radius;
            Curve edge_a;
            edge_a.label = "edge_a";
            edge_a.radius = radius;
            for (std::size_t k = 0; k < K; ++k) {
                const double f = static_cast<double>(k) / static_cast<double>(K - 1);
                const double v = v_star + (1.0 - v_star) * f;
                edge_b.points.push_back({v, v, 1.0});
                edge_a.points.push_back({v, 1.0, v});
            }
            curves.push_back(std::move(edge_b));
            curves.push_back(std::move(edge_a));
        }
    }

    // comparison bounds, drawn once; they do not depend on the radius list
    if (measure == UncertaintyMeasure::StdDev) {
        const double s = std::sqrt(std::max(0.0, 1.0 - ab * ab));
        Curve sum;
        sum.label = "comparison_busch_sum";
        sum.radius = 1.0;
        Curve quad;
        quad.label = "comparison_busch_quadratic";
        quad.radius = 1.0;
        const double q = std::sqrt(std::max(0.0, 1.0 - std::abs(ab)));
        for (std::size_t k = 0; k < K; ++k) {
            const double f = static_cast<double>(k) / static_cast<double>(K - 1);
            const double dA = s * f;
            sum.points.push_back({dA, dA, s - dA});
            const double dAq = q * f;
            quad.points.push_back(
                {dAq, dAq, std::sqrt(std::max(0.0, 1.0 - std::abs(ab) - dAq * dAq))});
        }
        curves.push_back(std::move(sum));
        curves.push_back(std::move(quad));
    } else if (measure == UncertaintyMeasure::ShannonEntropy) {
        const double mu = maassen_uffink_bound(ab);
        Curve line;
        line.label = "comparison_maassen_uffink";
        line.radius = 1.0;
        const double lo = std::max(0.0, mu - 1.0);
        const double hi = std::min(1.0, mu);
        for (std::size_t k = 0; k < K; ++k) {
            const double f = static_cast<double>(k) / static_cast<double>(K - 1);
            const double hA = lo + (hi - lo) * f;
            line.points.push_back({hA, hA, mu - hA});
        }
        curves.push_back(std::move(line));
    }
    return curves;
}

// Triple boundary: latitude polylines of the purity sphere |r| = radius,
// mapped through the chosen measure. Every point saturates the three-
// observable equality form at its radius (the axes span rank 3, so the
// quadratic form recovers |r|^2 exactly).
std::vector<Curve> triple_region_curves(const ObservableSet& S, UncertaintyMeasure measure,
                                        const std::vector<double>& radii,
                                        std::size_t boundary_points) {
    if (S.span_rank != 3) {
        throw DomainError(
            "region emission for three observables needs axes spanning rank 3; got rank " +
            std::to_string(S.span_rank));
    }
    const std::size_t P = std::max<std::size_t>(
        4, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(boundary_points)))));
    std::vector<Curve> curves;
    for (double radius : radii) {
        for (std::size_t j = 0; j < P; ++j) {
            const double phi = M_PI * static_cast<double>(j) / static_cast<double>(P - 1);
            Curve lat;
            lat.label = "boundary";
            lat.radius = radius;
            for (std::size_t k = 0; k < P; ++k) {
                const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(P);
                const Vec3 r = radius * Vec3(std::sin(phi) * std::cos(t),
                                             std::sin(phi) * std::sin(t), std::cos(phi));
                std::vector<double> pt = {phi, t};
                for (int i = 0; i < S.size(); ++i) {
                    pt.push_back(measure_value_of(
                        S.observables[static_cast<std::size_t>(i)].axis.dot(r), measure));
                }
                lat.points.push_back(std::move(pt));
            }
            curves.push_back(std::move(lat));
        }
    }
    return curves;
}

RunResult cmd_region(const RunConfig& cfg, const LoadedSet& L,
                     std::vector<std::string> warnings) {
    if (L.povm_mode) {
        throw DomainError("region does not support POVM offsets; use unit directions");
    }
    const int n = L.S.size();
    if (n != 2 && n != 3) {
        throw DomainError("region needs 2 or 3 observables, got " + std::to_string(n));
    }
    std::vector<double> radii = cfg.radii.empty() ? std::vector<double>{cfg.radius} : cfg.radii;
    check_radius_list(radii);
    if (cfg.boundary_points < 2) {
        throw DomainError("boundary point count must be at least 2");
    }

    const std::vector<Curve> curves =
        n == 2 ? pair_region_curves(L.S, cfg.measure, radii, cfg.boundary_points)
               : triple_region_curves(L.S, cfg.measure, radii, cfg.boundary_points);

    MetaList meta = base_meta(cfg, L);
    meta.emplace_back("radii", join_doubles(radii));
    meta.emplace_back("points", std::to_string(cfg.boundary_points));
    meta.emplace_back("curve_kinds",
                      "boundary=saturating;edge=member frontier;comparison=reference bound");

    RunResult res;
    res.warnings = std::move(warnings);
    if (cfg.format == OutputFormat::Csv) {
        std::string out = csv_meta(meta);
        if (n == 2) {
            out += "curve,radius,param,value_a,value_b\n";
        } else {
            out += "curve,radius,param_u,param_v,value_1,value_2,value_3\n";
        }
        for (const Curve& c : curves) {
            for (const auto& pt : c.points) {
                out += c.label + "," + format_double(c.radius);
                for (double x : pt) {
                    out += "," + format_double(x);
                }
                out += "\n";
            }
        }
        res.output = out;
    } else {
        ordered_json j;
        j["command"] = "region";
        j["config"] = json_meta(meta);
        ordered_json arr = ordered_json::array();
        for (const Curve& c : curves) {
            ordered_json o;
            o["label"] = c.label;
            o["radius"] = c.radius;
            o["points"] = c.points;
            arr.push_back(o);
        }
        j["curves"] = arr;
        res.output = dump_json(j);
    }
    return res;
}

// ---------------------------------------------------------------------------
// check

std::vector<double> values_in_measure(const ExpectationVector& u, UncertaintyMeasure m) {
    std::vector<double> v(static_cast<std::size_t>(u.size()));
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        v[static_cast<std::size_t>(i)] = measure_value_of(u(i), m);
    }
    return v;
}

RelationRow quadratic_form_row(const ObservableSet& S, const ExpectationVector& u,
                               double radius, const std::string& note) {
    const double quad = (S.pseudoinverse * u).squaredNorm();
    RelationRow r;
    r.relation = "quadratic_form";
    r.lhs = quad;
    r.rhs = radius * radius;
    r.slack = r.rhs - r.lhs;
    r.satisfied = r.slack >= -kSaturationTol;
    r.saturated = std::abs(r.slack) <= kSaturationTol;
    r.note = note;
    return r;
}

RelationRow realizability_row(const ObservableSet& S, const ExpectationVector& u,
                              double radius) {
    const ExpectationVector residual = S.matrix * (S.pseudoinverse * u) - u;
    RelationRow r;
    r.relation = "realizable";
    r.lhs = residual.lpNorm<Eigen::Infinity>();
    r.rhs = (S.pseudoinverse * u).norm();
    r.satisfied = realizable(S, u, radius);
    r.saturated = false;
    r.slack = r.satisfied ? 0.0 : -1.0;
    r.note = "lhs=|MM+u-u|_inf rhs=|M+u| at radius " + format_double(radius);
    return r;
}

RunResult cmd_check(const RunConfig& cfg, const LoadedSet& L,
                    std::vector<std::string> warnings) {
    const int n = L.S.size();
    const bool have_state = cfg.state.has_value();
    const bool have_point = !cfg.point.empty();
    if (have_state == have_point) {
        throw DomainError("check needs exactly one of --state or --point");
    }

    MetaList meta = base_meta(cfg, L);
    meta.emplace_back("radius", format_double(cfg.radius));
    std::vector<RelationRow> rows;

    if (L.povm_mode) {
        if (n != 2) {
            throw DimensionMismatch("POVM checks are implemented for pairs");
        }
        if (cfg.measure != UncertaintyMeasure::Expectation) {
            throw DomainError(
                "POVM checks use the expectation measure (outcome expectations)");
        }
        double uP = 0.0;
        double uQ = 0.0;
        if (have_state) {
            const QubitState rho = make_state(*cfg.state);
            uP = povm_expectation(L.povms[0], rho);
            uQ = povm_expectation(L.povms[1], rho);
            meta.emplace_back("state", join_doubles({rho.r.x(), rho.r.y(), rho.r.z()}));
        } else {
            if (cfg.point.size() != 2) {
                throw DimensionMismatch("POVM check point needs 2 outcome expectations");
            }
            uP = cfg.point[0];
            uQ = cfg.point[1];
        }
        meta.emplace_back("point", join_doubles({uP, uQ}));
        rows.push_back(row_from(
            "povm_pair", povm_pair_relation(L.povms[0], L.povms[1], uP, uQ, cfg.radius),
            "evaluated on offset-reduced expectations"));
        return emit_rows(cfg, meta, rows, std::move(warnings));
    }

    // projective pipeline: obtain the value tuple and, for states, the signs
    std::vector<double> vals;
    ExpectationVector u;
    SignVector taus;
    double radius_eq = cfg.radius;  // purity used by the equality forms
    std::string radius_note;
    if (have_state) {
        const QubitState rho = make_state(*cfg.state);
        u = expectations_of(L.S, rho);
        vals = values_in_measure(u, cfg.measure);
        taus.resize(static_cast<std::size_t>(n));
        std::string tau_str;
        for (int i = 0; i < n; ++i) {
            taus[static_cast<std::size_t>(i)] = u(i) >= 0.0 ? 1 : -1;
            tau_str += (i ? "," : "");
            tau_str += taus[static_cast<std::size_t>(i)] > 0 ? "+1" : "-1";
        }
        radius_eq = rho.r.norm();
        radius_note = "purity from the supplied state";
        meta.emplace_back("state", join_doubles({rho.r.x(), rho.r.y(), rho.r.z()}));
        meta.emplace_back("expectations", join_doubles(
            std::vector<double>(u.data(), u.data() + u.size())));
        meta.emplace_back("taus", tau_str);
    } else {
        if (static_cast<int>(cfg.point.size()) != n) {
            throw DimensionMismatch("point has " + std::to_string(cfg.point.size()) +
                                    " coordinates for " + std::to_string(n) + " observables");
        }
        vals = cfg.point;
        radius_note = "purity from --radius";
        meta.emplace_back("point", join_doubles(vals));
    }
    meta.emplace_back("values", join_doubles(vals));

    const double ab = n == 2 ? L.S.observables[0].axis.dot(L.S.observables[1].axis) : 0.0;

    switch (cfg.measure) {
        case UncertaintyMeasure::Expectation: {
            if (!have_state) {
                u = Eigen::Map<const ExpectationVector>(vals.data(),
                                                        static_cast<Eigen::Index>(n));
            }
            if (n == 2) {
                rows.push_back(row_from(
                    "expectation_pair",
                    expectation_pair_relation(vals[0], vals[1], ab, cfg.radius)));
            }
            if (n == 3 && L.S.span_rank == 3) {
                try {
                    rows.push_back(row_from(
                        "expectation_triple",
                        expectation_triple_relation(vals[0], vals[1], vals[2],
                                                    L.S.observables[0].axis,
                                                    L.S.observables[1].axis,
                                                    L.S.observables[2].axis, radius_eq),
                        radius_note));
                } catch (const DegenerateTriple&) {
                    warnings.push_back("triple nearly coplanar; equality form skipped");
                }
            }
            rows.push_back(quadratic_form_row(L.S, u, radius_eq, radius_note));
            rows.push_back(realizability_row(L.S, u, have_state ? 1.0 : cfg.radius));
            break;
        }
        case UncertaintyMeasure::StdDev: {
            if (n == 2) {
                rows.push_back(
                    row_from("stddev_pair", stddev_pair_relation(vals[0], vals[1], ab, cfg.radius)));
                rows.push_back(row_from(
                    "monotone_closure",
                    monotone_closure_relation(vals[0], vals[1], ab, cfg.radius)));
                if (cfg.radius == 1.0) {
                    rows.push_back(row_from("product_form",
                                            equivalent_product_form(vals[0], vals[1], ab)));
                    rows.push_back(row_from(
                        "disjunctive_closure",
                        disjunctive_closure_relation(vals[0], vals[1], ab)));
                }
                const auto busch = busch_bounds(vals[0], vals[1], ab);
                rows.push_back(row_from("busch_sum", busch.first, "comparison bound"));
                rows.push_back(row_from("busch_quadratic", busch.second, "comparison bound"));
                if (have_state) {
                    const QubitState rho{*cfg.state};
                    RelationRow rob;
                    rob.relation = "robertson";
                    rob.lhs = vals[0] * vals[1];
                    rob.rhs = robertson_bound(L.S.observables[0], L.S.observables[1], rho);
                    rob.slack = rob.lhs - rob.rhs;
                    rob.satisfied = rob.slack >= -kSaturationTol;
                    rob.saturated = std::abs(rob.slack) <= kSaturationTol;
                    rob.note = "state-dependent comparison";
                    rows.push_back(rob);
                }
            } else {
                std::string note = radius_note;
                if (!have_state) {
                    const auto found = exists_sign_assignment(vals, L.S, cfg.radius);
                    if (found) {
                        taus = *found;
                        note += "; signs from realizability search";
                    } else {
                        taus.assign(static_cast<std::size_t>(n), 1);
                        note += "; no realizable sign assignment, all signs +1";
                    }
                }
                rows.push_back(row_from(
                    "n_observable", n_observable_relation(vals, taus, L.S, radius_eq), note));
                if (n == 3 && L.S.span_rank == 3) {
                    try {
                        rows.push_back(row_from(
                            "stddev_triple",
                            triple_relation(vals[0], vals[1], vals[2], taus,
                                            L.S.observables[0].axis, L.S.observables[1].axis,
                                            L.S.observables[2].axis, radius_eq),
                            note));
                    } catch (const DegenerateTriple&) {
                        warnings.push_back("triple nearly coplanar; equality form skipped");
                    }
                }
            }
            break;
        }
        case UncertaintyMeasure::ShannonEntropy: {
            if (n != 2) {
                throw DomainError("entropic relations are implemented for pairs");
            }
            rows.push_back(row_from(
                "entropic_pair", entropic_pair_relation(vals[0], vals[1], ab, cfg.radius)));
            RelationRow mu;
            mu.relation = "maassen_uffink";
            mu.lhs = vals[0] + vals[1];
            mu.rhs = maassen_uffink_bound(ab);
            mu.slack = mu.lhs - mu.rhs;
            mu.satisfied = mu.slack >= -kSaturationTol;
            mu.saturated = std::abs(mu.slack) <= kSaturationTol;
            mu.note = "comparison bound";
            rows.push_back(mu);
            break;
        }
    }
    return emit_rows(cfg, meta, rows, std::move(warnings));
}

// ---------------------------------------------------------------------------
// saturate

RunResult cmd_saturate(const RunConfig& cfg, const LoadedSet& L,
                       std::vector<std::string> warnings) {
    if (L.povm_mode) {
        throw DomainError("saturate does not support POVM offsets");
    }
    if (L.S.size() != 2) {
        throw DimensionMismatch("saturate needs exactly 2 observables");
    }
    const PauliObservable& A = L.S.observables[0];
    const PauliObservable& B = L.S.observables[1];
    const double ab = A.axis.dot(B.axis);

    MetaList meta = base_meta(cfg, L);
    meta.emplace_back("target", join_doubles(cfg.point));

    struct StateRow {
        std::string label;
        Vec3 r;
        double purity;
        std::vector<double> targets;
        std::vector<double> achieved;
        double max_error;
        RelationVerdict verdict;
    };
    std::vector<StateRow> srows;

    if (cfg.measure == UncertaintyMeasure::Expectation) {
        if (cfg.point.size() != 2) {
            throw DimensionMismatch("expectation target needs 2 values");
        }
        const QubitState rho = saturating_state_expectations(cfg.point[0], cfg.point[1], A, B);
        const ExpectationVector u = expectations_of(L.S, rho);
        StateRow row;
        row.label = "in_span_state";
        row.r = rho.r;
        row.purity = rho.r.norm();
        row.targets = cfg.point;
        row.achieved = {u(0), u(1)};
        row.max_error = std::max(std::abs(u(0) - cfg.point[0]), std::abs(u(1) - cfg.point[1]));
        row.verdict = expectation_pair_relation(u(0), u(1), ab, row.purity);
        srows.push_back(row);
    } else {
        if (cfg.point.size() != 1) {
            throw DimensionMismatch("stddev/entropy target needs 1 value (for the first observable)");
        }
        const double target = cfg.point[0];
        double dA = 0.0;
        if (cfg.measure == UncertaintyMeasure::StdDev) {
            if (!(target >= 0.0 && target <= 1.0)) {
                throw DomainError("stddev target must lie in [0, 1]");
            }
            dA = target;
        } else {
            const double f = f_of_entropy(target);
            dA = std::sqrt(std::max(0.0, 1.0 - f * f));
        }
        const auto [plus, minus] = boundary_states_stddev(dA, A, B);
        for (const auto& [label, rho] :
             {std::pair<std::string, QubitState>{"plus_state", plus},
              std::pair<std::string, QubitState>{"minus_state", minus}}) {
            const ExpectationVector u = expectations_of(L.S, rho);
            StateRow row;
            row.label = label;
            row.r = rho.r;
            row.purity = rho.r.norm();
            row.targets = {target};
            row.achieved = values_in_measure(u, cfg.measure);
            row.max_error = std::abs(row.achieved[0] - target);
            row.verdict = cfg.measure == UncertaintyMeasure::StdDev
                              ? stddev_pair_relation(row.achieved[0], row.achieved[1], ab, 1.0)
                              : entropic_pair_relation(row.achieved[0], row.achieved[1], ab, 1.0);
            srows.push_back(row);
        }
    }

    RunResult res;
    res.warnings = std::move(warnings);
    if (cfg.format == OutputFormat::Csv) {
        std::string out = csv_meta(meta);
        out += "label,rx,ry,rz,purity,targets,achieved_a,achieved_b,max_error,slack,saturated\n";
        for (const StateRow& s : srows) {
            std::string targets_cell;  // semicolon-joined so the cell stays one CSV column
            for (std::size_t i = 0; i < s.targets.size(); ++i) {
                targets_cell += (i ? ";" : "") + format_double(s.targets[i]);
            }
            out += s.label + "," + format_double(s.r.x()) + "," + format_double(s.r.y()) + "," +
                   format_double(s.r.z()) + "," + format_double(s.purity) + "," + targets_cell +
                   "," + format_double(s.achieved[0]) + "," + format_double(s.achieved[1]) +
                   "," + format_double(s.max_error) + "," + format_double(s.verdict.slack) +
                   "," + (s.verdict.saturated ? "true" : "false") + "\n";
        }
        res.output = out;
    } else {
        ordered_json j;
        j["command"] = "saturate";
        j["config"] = json_meta(meta);
        ordered_json arr = ordered_json::array();
        for (const StateRow& s : srows) {
            ordered_json o;
            o["label"] = s.label;
            o["state"] = {s.r.x(), s.r.y(), s.r.z()};
            o["purity"] = s.purity;
            o["targets"] = s.targets;
            o["achieved"] = s.achieved;
            o["max_error"] = s.max_error;
            o["slack"] = s.verdict.slack;
            o["saturated"] = s.verdict.saturated;
            arr.push_back(o);
        }
        j["states"] = arr;
        res.output = dump_json(j);
    }
    return res;
}

// ---------------------------------------------------------------------------
// verify

RunResult cmd_verify(const RunConfig& cfg, const LoadedSet& L,
                     std::vector<std::string> warnings) {
    if (L.povm_mode) {
        throw DomainError("verify does not support POVM offsets");
    }
    if (cfg.relation.empty()) {
        throw UnknownRelation("verify needs --relation (see the catalog in the README)");
    }
    Sampler s;
    s.seed = cfg.seed;
    s.mode = SampleMode::PureUniform;
    s.count = cfg.samples;

    const TightnessReport rep =
        certify_tightness(L.S, cfg.relation, cfg.grid, s, cfg.epsilon);

    const std::string status =
        !rep.sound() ? "unsound" : (rep.tight() ? "tight" : "not-tight");

    RunResult res;
    res.warnings = std::move(warnings);
    res.exit_code = rep.claimed_tight && !rep.passed() ? kExitCertification : kExitOk;

    if (cfg.format == OutputFormat::Json) {
        ordered_json j;
        j["relation_id"] = rep.relation_id;
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : rep.params) {
            params[k] = v;
        }
        j["params"] = params;
        j["soundness"] = {{"violations", rep.soundness_violations},
                          {"worst_slack", rep.worst_slack},
                          {"states_checked", rep.samples_used}};
        j["completeness"] = {{"gap", rep.completeness_gap},
                             {"epsilon", rep.epsilon},
                             {"grid_resolution", rep.grid_resolution},
                             {"grid_points_checked", rep.grid_points_checked}};
        j["sampler"] = {{"seed", rep.sampler.seed},
                        {"mode", mode_token(rep.sampler.mode)},
                        {"count", rep.sampler.count},
                        {"generator", kGeneratorName}};
        j["verdict"] = {{"claimed_tight", rep.claimed_tight},
                        {"sound", rep.sound()},
                        {"tight", rep.tight()},
                        {"passed", rep.passed()},
                        {"status", status}};
        res.output = dump_json(j);
    } else {
        MetaList meta = base_meta(cfg, L);
        meta.emplace_back("relation", rep.relation_id);
        std::string out = csv_meta(meta);
        std::string header = "relation_id";
        std::string row = rep.relation_id;
        for (const auto& [k, v] : rep.params) {
            header += "," + k;
            row += "," + format_double(v);
        }
        header +=
            ",violations,worst_slack,states_checked,gap,epsilon,grid_resolution,"
            "grid_points_checked,seed,mode,count,generator,claimed_tight,sound,tight,passed,"
            "status";
        row += "," + std::to_string(rep.soundness_violations) + "," +
               format_double(rep.worst_slack) + "," + std::to_string(rep.samples_used) + "," +
               format_double(rep.completeness_gap) + "," + format_double(rep.epsilon) + "," +
               format_double(rep.grid_resolution) + "," +
               std::to_string(rep.grid_points_checked) + "," +
               std::to_string(rep.sampler.seed) + "," + mode_token(rep.sampler.mode) + "," +
               std::to_string(rep.sampler.count) + "," + kGeneratorName + "," +
               (rep.claimed_tight ? "true" : "false") + "," + (rep.sound() ? "true" : "false") +
               "," + (rep.tight() ? "true" : "false") + "," +
               (rep.passed() ? "true" : "false") + "," + status;
        out += header + "\n" + row + "\n";
        res.output = out;
    }
    return res;
}

// ---------------------------------------------------------------------------
// bounds

RunResult cmd_bounds(const RunConfig& cfg, const LoadedSet& L,
                     std::vector<std::string> warnings) {
    if (L.povm_mode) {
        throw DomainError("bounds does not support POVM offsets");
    }
    if (L.S.size() != 2) {
        throw DimensionMismatch("bounds needs exactly 2 observables");
    }
    const double ab = L.S.observables[0].axis.dot(L.S.observables[1].axis);
    const double r2 = cfg.radius * cfg.radius;
    const double cross = std::sqrt(std::max(0.0, 1.0 - ab * ab));

    MetaList meta = base_meta(cfg, L);
    meta.emplace_back("radius", format_double(cfg.radius));

    struct BoundRow {
        std::string name;
        double value;
        std::string kind;
        std::string note;
    };
    const std::vector<BoundRow> brows = {
        {"expectation_pair_rhs", (1.0 - ab * ab) * r2, "region",
         "right side of the expectation ellipse at this radius"},
        {"stddev_pair_rhs", 2.0 - (1.0 - ab * ab) * r2, "region",
         "right side of the stddev pair relation at this radius"},
        {"entropic_pair_rhs", (1.0 - ab * ab) * r2, "region",
         "right side of the entropic pair relation at this radius"},
        {"busch_sum_rhs", cross, "comparison", "lower bound on dA + dB"},
        {"busch_quadratic_rhs", 1.0 - std::abs(ab), "comparison",
         "lower bound on dA^2 + dB^2"},
        {"maassen_uffink", maassen_uffink_bound(ab), "comparison",
         "lower bound on H(A) + H(B)"},
        {"robertson_max", cross, "comparison",
         "largest value of the state-dependent bound |(a x b).r|; induces no "
         "state-independent region"},
    };

    RunResult res;
    res.warnings = std::move(warnings);
    if (cfg.format == OutputFormat::Csv) {
        std::string out = csv_meta(meta);
        out += "bound,value,kind,note\n";
        for (const BoundRow& b : brows) {
            out += b.name + "," + format_double(b.value) + "," + b.kind + "," + b.note + "\n";
        }
        res.output = out;
    } else {
        ordered_json j;
        j["command"] = "bounds";
        j["config"] = json_meta(meta);
        ordered_json arr = ordered_json::array();
        for (const BoundRow& b : brows) {
            arr.push_back({{"bound", b.name},
                           {"value", b.value},
                           {"kind", b.kind},
                           {"note", b.note}});
        }
        j["bounds"] = arr;
        res.output = dump_json(j);
    }
    return res;
}

// ---------------------------------------------------------------------------
// coeffs

RunResult cmd_coeffs(const RunConfig& cfg, const LoadedSet& L,
                     std::vector<std::string> warnings) {
    const int n = L.S.size();
    MetaList meta = base_meta(cfg, L);
    meta.emplace_back("span_rank", std::to_string(L.S.span_rank));

    RunResult res;
    res.warnings = std::move(warnings);
    if (cfg.format == OutputFormat::Csv) {
        std::string out = csv_meta(meta);
        out += "block,row,col,value\n";
        const auto emit = [&](const std::string& name, const Eigen::MatrixXd& m) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    out += name + "," + std::to_string(i) + "," + std::to_string(j) + "," +
                           format_double(m(i, j)) + "\n";
                }
            }
        };
        emit("matrix", L.S.matrix);
        emit("pseudoinverse", L.S.pseudoinverse);
        emit("coeffs", L.S.coeffs);
        res.output = out;
    } else {
        const auto to_json = [](const Eigen::MatrixXd& m) {
            ordered_json rows = ordered_json::array();
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                ordered_json row = ordered_json::array();
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    row.push_back(m(i, j));
                }
                rows.push_back(row);
            }
            return rows;
        };
        ordered_json j;
        j["command"] = "coeffs";
        j["config"] = json_meta(meta);
        j["span_rank"] = L.S.span_rank;
        j["matrix"] = to_json(L.S.matrix);
        j["pseudoinverse"] = to_json(L.S.pseudoinverse);
        j["coeffs"] = to_json(L.S.coeffs);
        res.output = dump_json(j);
    }
    (void)n;
    return res;
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf;
    const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return std::string(buf.data(), static_cast<std::size_t>(p - buf.data()));
}

RunResult run_command(const RunConfig& cfg) {
    std::vector<std::string> warnings;
    try {
        const LoadedSet L = load_observables(cfg, warnings);
        if (!(cfg.radius >= 0.0 && cfg.radius <= 1.0)) {
            throw DomainError("radius must lie in [0, 1], got " + format_double(cfg.radius));
        }
        switch (cfg.command) {
            case Command::Region:
                return cmd_region(cfg, L, std::move(warnings));
            case Command::Check:
                return cmd_check(cfg, L, std::move(warnings));
            case Command::Saturate:
                return cmd_saturate(cfg, L, std::move(warnings));
            case Command::Verify:
                return cmd_verify(cfg, L, std::move(warnings));
            case Command::Bounds:
                return cmd_bounds(cfg, L, std::move(warnings));
            case Command::Coeffs:
                return cmd_coeffs(cfg, L, std::move(warnings));
        }
        throw DomainError("unknown command");
    } catch (const Error& e) {
        RunResult res;
        res.exit_code = kExitValidation;
        res.output = std::string(e.what());
        res.warnings = std::move(warnings);
        return res;
    }
}

namespace {

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) {
                ++pos;
            }
            if (pos != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw DomainError("cannot parse " + what + " entry '" + item + "'");
        }
    }
    if (out.empty()) {
        throw DomainError(what + " is empty");
    }
    return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Uncertainty regions for qubit observables: exact relations, saturating "
                 "states, and brute-force tightness certification"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<std::string> obs_args;
    std::string measure_str = "stddev";
    std::string format_str = "csv";
    std::string point_str;
    std::string state_str;
    std::string radii_str;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--obs", obs_args,
                        "observable direction 'x,y,z' (normalized) or POVM 'x,y,z,alpha'; "
                        "repeat per observable")
            ->required();
        sub->add_option("--measure", measure_str, "expectation | stddev | entropy");
        sub->add_option("--radius", cfg.radius, "largest Bloch norm, in [0, 1]");
        sub->add_option("--format", format_str, "csv | json");
        sub->add_option("--out", cfg.out_path, "output file (default stdout)");
        return sub;
    };

    CLI::App* region = add_common(app.add_subcommand("region", "emit region boundary data"));
    region->add_option("--radii", radii_str, "comma-separated radius list");
    region->add_option("--points", cfg.boundary_points, "points per boundary curve");

    CLI::App* check = add_common(
        app.add_subcommand("check", "evaluate every applicable relation at a point or state"));
    check->add_option("--point", point_str, "uncertainty tuple in the chosen measure");
    check->add_option("--state", state_str, "Bloch vector 'x,y,z'");

    CLI::App* saturate = add_common(app.add_subcommand(
        "saturate", "construct boundary states hitting a target uncertainty"));
    saturate->add_option("--target", point_str,
                         "expectation: 'uA,uB'; stddev/entropy: first observable's value");

    CLI::App* verify = add_common(app.add_subcommand(
        "verify", "certify a relation as sound and tight against brute force"));
    verify->add_option("--relation", cfg.relation, "catalog id (e.g. theorem1, lemma2)");
    verify->add_option("--grid", cfg.grid, "grid resolution in (0, 0.1]");
    verify->add_option("--epsilon", cfg.epsilon, "completeness tolerance (0 = 2 * grid)");
    verify->add_option("--samples", cfg.samples, "soundness sample count");
    verify->add_option("--seed", cfg.seed, "sampler seed");

    add_common(app.add_subcommand("bounds", "emit reference bound values for a pair"));
    add_common(app.add_subcommand("coeffs", "emit M, its pseudoinverse, and the coefficient matrix"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    if (region->parsed()) {
        cfg.command = Command::Region;
    } else if (check->parsed()) {
        cfg.command = Command::Check;
    } else if (saturate->parsed()) {
        cfg.command = Command::Saturate;
    } else if (verify->parsed()) {
        cfg.command = Command::Verify;
    } else if (app.get_subcommand("bounds")->parsed()) {
        cfg.command = Command::Bounds;
    } else {
        cfg.command = Command::Coeffs;
    }

    try {
        bool any_povm = false;
        std::vector<std::vector<double>> parsed;
        for (const std::string& o : obs_args) {
            parsed.push_back(parse_double_list(o, "--obs"));
            if (parsed.back().size() == 4) {
                any_povm = true;
            } else if (parsed.back().size() != 3) {
                throw DomainError("--obs needs 3 components (or 4 with a POVM offset), got " +
                                  std::to_string(parsed.back().size()));
            }
        }
        for (const auto& p : parsed) {
            cfg.axes.emplace_back(p[0], p[1], p[2]);
            if (any_povm) {
                cfg.offsets.push_back(p.size() == 4 ? p[3] : 0.0);
            }
        }
        if (measure_str == "expectation") {
            cfg.measure = UncertaintyMeasure::Expectation;
        } else if (measure_str == "stddev") {
            cfg.measure = UncertaintyMeasure::StdDev;
        } else if (measure_str == "entropy") {
            cfg.measure = UncertaintyMeasure::ShannonEntropy;
        } else {
            throw DomainError("unknown measure '" + measure_str + "'");
        }
        if (format_str == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (format_str == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            throw DomainError("unknown format '" + format_str + "'");
        }
        if (!point_str.empty()) {
            cfg.point = parse_double_list(point_str, "--point/--target");
        }
        if (!state_str.empty()) {
            const std::vector<double> s = parse_double_list(state_str, "--state");
            if (s.size() != 3) {
                throw DomainError("--state needs 3 components");
            }
            cfg.state = Vec3(s[0], s[1], s[2]);
        }
        if (!radii_str.empty()) {
            cfg.radii = parse_double_list(radii_str, "--radii");
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    const RunResult res = run_command(cfg);
    for (const std::string& w : res.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    if (res.exit_code == kExitValidation) {
        std::cerr << "error: " << res.output << "\n";
        return res.exit_code;
    }
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open '" << cfg.out_path << "' for writing\n";
            return kExitValidation;
        }
        f << res.output;
    } else {
        std::cout << res.output;
    }
    return res.exit_code;
}

}  // namespace qur
