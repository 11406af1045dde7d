#include "curvegait/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "curvegait/parallel.hpp"

namespace curvegait {

namespace {

double median_x(const TriangleMesh& mesh) {
    std::vector<double> xs(mesh.vertex_count());
    for (std::size_t v = 0; v < xs.size(); ++v) xs[v] = mesh.vertices[v].x;
    std::size_t n = xs.size();
    if (n == 0) throw std::runtime_error("median of an empty mesh");
    std::nth_element(xs.begin(), xs.begin() + n / 2, xs.end());
    double upper = xs[n / 2];
    if (n % 2 == 1) return upper;
    std::nth_element(xs.begin(), xs.begin() + n / 2 - 1, xs.end());
    return 0.5 * (xs[n / 2 - 1] + upper);
}

bool on_side(double x, double sagittal, Side side) {
    return side == Side::Left ? x > sagittal : x < sagittal;
}

// Uniform-grid nearest neighbor lookup; cell size of the query radius.
class PointGrid {
public:
    PointGrid(const std::vector<Vec3>& points, double cell) : points_(points), cell_(cell) {
        cells_.reserve(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            cells_[key(points[i])].push_back(static_cast<int>(i));
    }

    // Nearest point within max_dist; -1 when none.
    int nearest(const Vec3& q, double max_dist) const {
        int rings = static_cast<int>(std::ceil(max_dist / cell_)) + 1;
        long long qx = coord(q.x), qy = coord(q.y), qz = coord(q.z);
        int best = -1;
        double best_d2 = max_dist * max_dist;
        for (int r = 0; r <= rings; ++r) {
            for (long long dx = -r; dx <= r; ++dx)
                for (long long dy = -r; dy <= r; ++dy)
                    for (long long dz = -r; dz <= r; ++dz) {
                        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != r) continue;
                        auto it = cells_.find(pack(qx + dx, qy + dy, qz + dz));
                        if (it == cells_.end()) continue;
                        for (int idx : it->second) {
                            double d2 = norm2(points_[idx] - q);
                            if (d2 < best_d2 || (d2 == best_d2 && (best == -1 || idx < best))) {
                                best_d2 = d2;
                                best = idx;
                            }
                        }
                    }
            // Any point in ring r+1 is at least r cells away; stop once the
            // best hit beats that bound.
            if (best >= 0 && best_d2 <= (cell_ * r) * (cell_ * r)) break;
        }
        return best;
    }

private:
    long long coord(double v) const { return static_cast<long long>(std::floor(v / cell_)); }
    std::uint64_t key(const Vec3& p) const { return pack(coord(p.x), coord(p.y), coord(p.z)); }
    static std::uint64_t pack(long long x, long long y, long long z) {
        std::uint64_t h = static_cast<std::uint64_t>(x) * 73856093ull;
        h ^= static_cast<std::uint64_t>(y) * 19349663ull;
        h ^= static_cast<std::uint64_t>(z) * 83492791ull;
        return h;
    }

    const std::vector<Vec3>& points_;
    double cell_;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

Vec3 centroid(const TriangleMesh& mesh) {
    Vec3 sum{};
    for (const Vec3& v : mesh.vertices) sum += v;
    return sum / static_cast<double>(mesh.vertex_count());
}

}  // namespace

RegionSample detect_knee_region(const TriangleMesh& mesh, const CurvatureField& field, Side side,
                                double body_height, const RegionParams& params) {
    if (field.size() != mesh.vertex_count())
        throw std::runtime_error("curvature field does not match mesh");

    RegionSample out;
    out.side = side;
    out.radius = params.radius;
    out.sagittal_x = median_x(mesh);

    const double y_lo = params.band_lo * body_height;
    const double y_hi = params.band_hi * body_height;

    int best = -1;
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        const Vec3& p = mesh.vertices[v];
        if (p.y < y_lo || p.y > y_hi) continue;
        if (!on_side(p.x, out.sagittal_x, side)) continue;
        if (!field.reliable(static_cast<int>(v))) continue;
        if (best < 0 || field.gaussian[v] > field.gaussian[best]) best = static_cast<int>(v);
        // Ties keep the lowest index because iteration is ascending and the
        // comparison is strict.
    }
    if (best < 0)
        throw std::runtime_error("no vertices in the knee band [" + std::to_string(y_lo) + ", " +
                                 std::to_string(y_hi) + "] m on the " +
                                 std::string(to_string(side)) + " side");

    out.center = best;
    const Vec3& c = mesh.vertices[best];
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        if (!on_side(mesh.vertices[v].x, out.sagittal_x, side)) continue;
        if (distance(mesh.vertices[v], c) <= params.radius)
            out.members.push_back(static_cast<int>(v));
    }
    return out;
}

RegionMeans region_means(const CurvatureField& field, const RegionSample& region) {
    RegionMeans means;
    std::size_t counted = 0;
    for (int v : region.members) {
        if (!field.reliable(v) || field.clamped[v]) continue;
        means.gaussian += field.gaussian[v];
        means.mean += field.mean[v];
        means.absolute += field.k_abs[v];
        means.rms += field.k_rms[v];
        ++counted;
    }
    if (counted == 0) throw std::runtime_error("knee region has no reliable vertices");
    double inv = 1.0 / static_cast<double>(counted);
    means.gaussian *= inv;
    means.mean *= inv;
    means.absolute *= inv;
    means.rms *= inv;
    return means;
}

std::vector<CurvatureField> sequence_fields(const GaitSequence& seq) {
    std::vector<CurvatureField> fields(seq.frames.size());
    parallel_for(seq.frames.size(), [&](std::size_t f) {
        fields[f] = curvature_field(seq.frames[f]);
    });
    return fields;
}

KneeTimeSeries knee_time_series(const GaitSequence& seq,
                                const std::vector<CurvatureField>& fields,
                                const RegionParams& params) {
    if (fields.size() != seq.frames.size())
        throw std::runtime_error("field count does not match frame count");
    KneeTimeSeries series;
    series.labels = seq.labels;
    series.frames_per_cycle = seq.frames_per_cycle;
    series.left.resize(seq.frames.size());
    series.right.resize(seq.frames.size());
    for (std::size_t f = 0; f < seq.frames.size(); ++f) {
        try {
            RegionSample left =
                detect_knee_region(seq.frames[f], fields[f], Side::Left, seq.body_height, params);
            RegionSample right =
                detect_knee_region(seq.frames[f], fields[f], Side::Right, seq.body_height, params);
            series.left[f] = region_means(fields[f], left);
            series.right[f] = region_means(fields[f], right);
        } catch (const std::exception& e) {
            throw std::runtime_error("frame " + std::to_string(f) + ": " + e.what());
        }
    }
    return series;
}

KneeTimeSeries knee_time_series(const GaitSequence& seq, const RegionParams& params) {
    return knee_time_series(seq, sequence_fields(seq), params);
}

std::vector<std::pair<int, int>> half_cycle_pairs(const GaitSequence& seq) {
    if (seq.frames_per_cycle % 2 != 0)
        throw std::invalid_argument("frames per cycle must be even for half-cycle alignment");
    std::vector<std::pair<int, int>> pairs;
    int half = seq.frames_per_cycle / 2;
    for (int c = 0; c < seq.cycles; ++c)
        for (int k = 0; k < half; ++k)
            pairs.emplace_back(c * seq.frames_per_cycle + k, c * seq.frames_per_cycle + k + half);
    return pairs;
}

SymmetryReport symmetry_report(const TriangleMesh& mesh_i, const CurvatureField& field_i,
                               const TriangleMesh& mesh_j, const CurvatureField& field_j,
                               CurvatureType type, double body_height,
                               const RegionParams& params) {
    if (mesh_i.triangles != mesh_j.triangles)
        throw std::runtime_error("symmetry pair does not share connectivity");

    SymmetryReport rep;
    rep.type = type;

    // Reflect frame j about its own sagittal plane, then align centroids.
    double sag_j = median_x(mesh_j);
    TriangleMesh reflected = mesh_j;
    for (Vec3& v : reflected.vertices) v.x = 2.0 * sag_j - v.x;
    Vec3 shift = centroid(mesh_i) - centroid(reflected);
    for (Vec3& v : reflected.vertices) v += shift;

    const double max_match = 0.10;
    PointGrid grid(reflected.vertices, 0.02);

    const std::vector<double>& vi = field_i.values(type);
    const std::vector<double>& vj = field_j.values(type);

    rep.residual.assign(mesh_i.vertex_count(), 0.0);
    std::vector<int> match(mesh_i.vertex_count(), -1);
    std::size_t misses = 0;
    for (std::size_t v = 0; v < mesh_i.vertex_count(); ++v) {
        int m = grid.nearest(mesh_i.vertices[v], max_match);
        match[v] = m;
        if (m < 0) {
            ++misses;
            continue;
        }
        rep.max_match_distance =
            std::max(rep.max_match_distance, distance(mesh_i.vertices[v], reflected.vertices[m]));
        rep.residual[v] = vi[v] - vj[m];
    }
    if (misses * 5 > mesh_i.vertex_count())
        throw std::runtime_error("symmetry correspondence failed: " + std::to_string(misses) +
                                 " of " + std::to_string(mesh_i.vertex_count()) +
                                 " vertices have no mirror match within 10 cm");

    // Area-weighted mean |residual| over the lower body.
    OneRingTable rings_i = build_one_rings(mesh_i);
    VertexAreas areas_i = vertex_areas(mesh_i, rings_i);
    double weighted = 0.0, total_area = 0.0;
    for (std::size_t v = 0; v < mesh_i.vertex_count(); ++v) {
        if (mesh_i.vertices[v].y >= 0.55 * body_height) continue;
        if (match[v] < 0) continue;
        if (!field_i.reliable(static_cast<int>(v)) || !field_j.reliable(match[v])) continue;
        weighted += areas_i.area[v] * std::abs(rep.residual[v]);
        total_area += areas_i.area[v];
    }
    if (total_area <= 0.0) throw std::runtime_error("no reliable lower-body vertices to compare");
    rep.asymmetry_index = weighted / total_area;

    // Knee height gap: left knee of frame i against right knee of frame j
    // (the pair shown side by side after mirroring), in the aligned frame.
    RegionSample knee_i =
        detect_knee_region(mesh_i, field_i, Side::Left, body_height, params);
    RegionSample knee_j =
        detect_knee_region(mesh_j, field_j, Side::Right, body_height, params);
    double y_i = mesh_i.vertices[knee_i.center].y;
    double y_j = mesh_j.vertices[knee_j.center].y + shift.y;
    rep.knee_height_gap = std::abs(y_i - y_j);

    return rep;
}

double mirrored_residual_index(const TriangleMesh& mesh, const std::vector<double>& field,
                               const std::vector<std::uint8_t>& reliable, double body_height) {
    if (field.size() != mesh.vertex_count())
        throw std::runtime_error("field length does not match mesh");

    double sag = median_x(mesh);
    TriangleMesh reflected = mesh;
    for (Vec3& v : reflected.vertices) v.x = 2.0 * sag - v.x;

    PointGrid grid(reflected.vertices, 0.02);
    OneRingTable rings = build_one_rings(mesh);
    VertexAreas areas = vertex_areas(mesh, rings);

    double weighted = 0.0, total_area = 0.0;
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        if (mesh.vertices[v].y >= 0.55 * body_height) continue;
        int m = grid.nearest(mesh.vertices[v], 0.10);
        if (m < 0) continue;
        if (!reliable.empty() && (!reliable[v] || !reliable[m])) continue;
        weighted += areas.area[v] * std::abs(field[v] - field[m]);
        total_area += areas.area[v];
    }
    if (total_area <= 0.0) throw std::runtime_error("no vertices to compare");
    return weighted / total_area;
}

AverageCurvatureMap average_curvature_map(const GaitSequence& seq,
                                          const std::vector<CurvatureField>& fields,
                                          CurvatureType type, int cycle) {
    if (cycle < 0 || cycle >= seq.cycles) throw std::invalid_argument("cycle index out of range");
    if (fields.size() != seq.frames.size())
        throw std::runtime_error("field count does not match frame count");

    AverageCurvatureMap map;
    map.type = type;
    map.cycle = cycle;
    const int begin = cycle * seq.frames_per_cycle;
    const std::size_t nv = seq.frames[begin].vertex_count();
    map.values.assign(nv, 0.0);
    for (int f = begin; f < begin + seq.frames_per_cycle; ++f) {
        const std::vector<double>& vals = fields[f].values(type);
        for (std::size_t v = 0; v < nv; ++v) map.values[v] += vals[v];
    }
    for (double& v : map.values) v /= seq.frames_per_cycle;
    return map;
}

AverageCurvatureMap average_curvature_map(const GaitSequence& seq, CurvatureType type, int cycle) {
    return average_curvature_map(seq, sequence_fields(seq), type, cycle);
}

const char* to_string(GaitClass verdict) {
    return verdict == GaitClass::SymmetricNormal ? "SymmetricNormal" : "AsymmetricAnomalous";
}

ClassifyResult classify_symmetry(const KneeTimeSeries& series, double threshold) {
    const int n = series.frame_count();
    if (series.frames_per_cycle <= 0 || n < series.frames_per_cycle)
        throw std::invalid_argument("classification needs at least one full cycle");
    const int half = series.frames_per_cycle / 2;

    auto value = [&](const RegionMeans& m, int type) {
        switch (type) {
            case 0: return m.gaussian;
            case 1: return m.mean;
            case 2: return m.absolute;
            default: return m.rms;
        }
    };

    ClassifyResult result;
    result.threshold = threshold;
    for (int type = 0; type < 4; ++type) {
        // Left series shifted back half a cycle against the right series.
        double diff2 = 0.0;
        double mean_all = 0.0;
        for (int f = 0; f < n; ++f) {
            double l = value(series.left[(f + half) % n], type);
            double r = value(series.right[f], type);
            diff2 += (l - r) * (l - r);
            mean_all += l + r;
        }
        mean_all /= 2.0 * n;
        double spread_l = 0.0, spread_r = 0.0;
        for (int f = 0; f < n; ++f) {
            double l = value(series.left[(f + half) % n], type);
            double r = value(series.right[f], type);
            spread_l += (l - mean_all) * (l - mean_all);
            spread_r += (r - mean_all) * (r - mean_all);
        }
        double denom = std::sqrt(std::max(spread_l, spread_r) / n);
        double nrmsd = denom > 0.0 ? std::sqrt(diff2 / n) / denom : 0.0;
        result.per_type[type] = nrmsd;
        result.decision_value = std::max(result.decision_value, nrmsd);
    }
    result.verdict = result.decision_value < threshold ? GaitClass::SymmetricNormal
                                                       : GaitClass::AsymmetricAnomalous;
    return result;
}

}  // namespace curvegait
