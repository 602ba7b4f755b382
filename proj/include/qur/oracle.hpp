#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qur/bloch.hpp"
#include "qur/errors.hpp"
#include "qur/observable_set.hpp"
#include "qur/relations.hpp"

namespace qur {

// Name of the deterministic generator behind every sampler, recorded in
// reports so runs can be replayed.
inline constexpr const char* kGeneratorName = "mt19937_64";

enum class SampleMode {
    PureUniform,  // uniform on the Bloch sphere (normalized Gaussian triples)
    BallUniform,  // uniform in the Bloch ball (cube-root radius transform)
    PlanarGrid,   // pure states in the plane span{e1, e2}, angle-uniform
};

// Deterministic state source: identical (seed, mode, count) always replays
// the identical sequence. plane_e1/plane_e2 are used by PlanarGrid only and
// are orthonormalized on use.
struct Sampler {
    std::uint64_t seed = 1;
    SampleMode mode = SampleMode::PureUniform;
    std::size_t count = 0;
    Vec3 plane_e1{1.0, 0.0, 0.0};
    Vec3 plane_e2{0.0, 1.0, 0.0};
};

/// Draws `s.count` states per the sampler mode.
std::vector<QubitState> sample_states(const Sampler& s);

/// Brute-force image of the sampled states in the chosen measure: one n-tuple
/// of uncertainty values per state.
std::vector<std::vector<double>> attainable_region(const ObservableSet& S,
                                                   UncertaintyMeasure measure, const Sampler& s);

// Result of one soundness + completeness certification run.
//
// Soundness: every sampled state must satisfy the relation (slack >= -1e-9);
// violations beyond that are counted and the most negative slack is kept.
// Completeness: every grid point satisfying the relation (restricted to the
// realizable slice when the relation carries the M M+ u = u side-condition)
// must lie within epsilon of an attained point; the gap is the largest
// observed distance. passed() <=> sound and gap <= epsilon.
struct TightnessReport {
    std::string relation_id;
    std::map<std::string, double> params;
    std::size_t soundness_violations = 0;
    double worst_slack = 0.0;
    double completeness_gap = 0.0;
    double grid_resolution = 0.0;
    double epsilon = 0.0;
    std::size_t samples_used = 0;
    std::size_t grid_points_checked = 0;
    Sampler sampler;
    bool claimed_tight = false;

    bool sound() const { return soundness_violations == 0; }
    bool tight() const { return completeness_gap <= epsilon; }
    bool passed() const { return sound() && tight(); }
};

/// Certifies one relation against brute force. Catalog ids:
///   lemma2, theorem1, product_form, monotone_closure, disjunctive_closure,
///   busch_sum, busch_quadratic, entropic_pair, maassen_uffink  (pairs only)
///   lemma3, lemma3_constrained                                 (any n)
/// lemma3 is the bare quadratic-form bound; lemma3_constrained adds the
/// M M+ u = u realizability side-condition and grids the realizable slice.
/// grid_resolution must be in (0, 0.1]; epsilon >= grid_resolution (pass a
/// non-positive epsilon for the default 2 * grid_resolution). Throws
/// UnknownRelation for ids outside the catalog and DimensionMismatch when a
/// pair relation is asked of a set with n != 2.
TightnessReport certify_tightness(const ObservableSet& S, const std::string& relation_id,
                                  double grid_resolution, const Sampler& s, double epsilon = 0.0);

/// True when the catalog claims the relation describes the attainable region
/// exactly for this set (lemma2, theorem1, product_form, entropic_pair,
/// lemma3_constrained; lemma3 only when it has no null directions to hide,
/// i.e. n == span_rank).
bool relation_claimed_tight(const ObservableSet& S, const std::string& relation_id);

enum class ExtremalObjective { MinSum, MinSecondGivenFirst };

struct EnvelopePoint {
    double x = 0.0;
    double y = 0.0;
};

// min_sum is the smallest x + y over the scan; curve is the lower envelope
// min{y : x in bin} on bins of width `resolution`.
struct ExtremalResult {
    double min_sum = 0.0;
    std::vector<EnvelopePoint> curve;
};

/// Scans pure states in span{a, b} at angle step `resolution` (in (0, 0.01])
/// and reports the requested extremal data in the chosen measure. Both fields
/// of the result are filled regardless of the objective. Throws
/// UnsupportedSetSize unless the set has exactly two observables.
ExtremalResult extremal_scan(const ObservableSet& S, UncertaintyMeasure measure,
                             ExtremalObjective objective, double resolution);

}  // namespace qur
