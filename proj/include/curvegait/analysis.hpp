// The gait analyses: knee-region curvature time series, half-cycle left-right
// symmetry, cycle-averaged curvature maps, and the symmetric/anomalous rule.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "curvegait/curvature.hpp"
#include "curvegait/gait.hpp"

namespace curvegait {

struct RegionParams {
    double radius = 0.05;   // m, membership radius around the detected center
    double band_lo = 0.25;  // knee search band as fractions of body height
    double band_hi = 0.30;
};

// A knee sample: center = in-band vertex with maximum gaussian curvature on
// the requested side of the sagittal plane (ties broken by lowest index),
// members = same-side vertices within the radius of the center.
struct RegionSample {
    Side side = Side::Left;
    int center = -1;
    std::vector<int> members;
    double radius = 0.0;
    double sagittal_x = 0.0;  // the frame's sagittal plane (median vertex x)
};

// The sagittal plane is the vertical plane through the median x of all
// vertices; left is +x. Throws std::runtime_error when the band holds no
// vertex on the requested side.
RegionSample detect_knee_region(const TriangleMesh& mesh, const CurvatureField& field, Side side,
                                double body_height, const RegionParams& params = {});

// Mean of the four curvature types over region members (boundary- or
// clamp-flagged vertices excluded).
struct RegionMeans {
    double gaussian = 0.0, mean = 0.0, absolute = 0.0, rms = 0.0;
};

RegionMeans region_means(const CurvatureField& field, const RegionSample& region);

struct KneeTimeSeries {
    std::vector<RegionMeans> left, right;  // one entry per frame
    std::vector<PostureLabel> labels;
    int frames_per_cycle = 0;

    int frame_count() const { return static_cast<int>(left.size()); }
};

KneeTimeSeries knee_time_series(const GaitSequence& seq, const RegionParams& params = {});
// Variant reusing precomputed per-frame fields (must match seq.frames).
KneeTimeSeries knee_time_series(const GaitSequence& seq,
                                const std::vector<CurvatureField>& fields,
                                const RegionParams& params = {});

// (i, i + fpc/2) for the first half of every cycle.
std::vector<std::pair<int, int>> half_cycle_pairs(const GaitSequence& seq);

struct SymmetryReport {
    int frame_i = -1, frame_j = -1;
    CurvatureType type = CurvatureType::Gaussian;
    std::vector<double> residual;   // on frame_i vertices: field_i - matched mirrored field_j
    double asymmetry_index = 0.0;   // area-weighted mean |residual| below 0.55 * height
    double knee_height_gap = 0.0;   // |y_left_knee(i) - y_right_knee(j)| after alignment, m
    double max_match_distance = 0.0;
};

// Reflects frame j about its sagittal plane, aligns centroids, matches each
// frame-i vertex to the nearest reflected frame-j vertex and differences the
// fields. Throws std::runtime_error when > 20% of vertices have no match
// within 10 cm (meshes too dissimilar to compare).
SymmetryReport symmetry_report(const TriangleMesh& mesh_i, const CurvatureField& field_i,
                               const TriangleMesh& mesh_j, const CurvatureField& field_j,
                               CurvatureType type, double body_height,
                               const RegionParams& params = {});

// Mirrored-residual index of a single field against itself on one geometry
// (used for cycle-averaged maps).
double mirrored_residual_index(const TriangleMesh& mesh, const std::vector<double>& field,
                               const std::vector<std::uint8_t>& reliable, double body_height);

struct AverageCurvatureMap {
    CurvatureType type = CurvatureType::Gaussian;
    int cycle = 0;
    std::vector<double> values;  // per vertex, averaged over the cycle's frames
};

AverageCurvatureMap average_curvature_map(const GaitSequence& seq, CurvatureType type, int cycle);
AverageCurvatureMap average_curvature_map(const GaitSequence& seq,
                                          const std::vector<CurvatureField>& fields,
                                          CurvatureType type, int cycle);

enum class GaitClass { SymmetricNormal, AsymmetricAnomalous };

const char* to_string(GaitClass verdict);

// Half-cycle rule: shift the left series by half a cycle and compare with the
// right. The decision value is the worst (largest) normalized RMS difference
// across the four curvature types; below the threshold the gait is symmetric.
struct ClassifyResult {
    GaitClass verdict = GaitClass::SymmetricNormal;
    double decision_value = 0.0;
    double threshold = 0.0;
    // NRMSD per curvature type: gaussian, mean, absolute, rms.
    std::array<double, 4> per_type{};
};

ClassifyResult classify_symmetry(const KneeTimeSeries& series, double threshold = 0.2);

// Per-frame curvature fields for a sequence (parallel across frames).
std::vector<CurvatureField> sequence_fields(const GaitSequence& seq);

}  // namespace curvegait
