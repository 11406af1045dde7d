#include "curvegait/gait.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "curvegait/parallel.hpp"

namespace curvegait {

namespace {

constexpr double kDeg = M_PI / 180.0;

// Trigonometric interpolation through 8 periodic samples: the unique degree-4
// trig polynomial (cosine-only Nyquist term) through the keys. Smooth,
// exactly periodic, and shift-by-half-cycle maps key slot k to k+4.
struct TrigCurve8 {
    std::array<double, 8> key{};

    double eval(double t) const {
        // DFT-based evaluation, small and done per call (8 keys only).
        double a0 = 0.0;
        for (double k : key) a0 += k;
        a0 /= 8.0;
        double out = a0;
        for (int m = 1; m <= 3; ++m) {
            double ac = 0.0, as = 0.0;
            for (int k = 0; k < 8; ++k) {
                double ang = 2.0 * M_PI * m * k / 8.0;
                ac += key[k] * std::cos(ang);
                as += key[k] * std::sin(ang);
            }
            ac /= 4.0;
            as /= 4.0;
            out += ac * std::cos(2.0 * M_PI * m * t) + as * std::sin(2.0 * M_PI * m * t);
        }
        double a4 = 0.0;
        for (int k = 0; k < 8; ++k) a4 += key[k] * (k % 2 == 0 ? 1.0 : -1.0);
        a4 /= 8.0;
        out += a4 * std::cos(2.0 * M_PI * 4.0 * t);
        return out;
    }
};

TrigCurve8 curve(std::array<double, 8> degrees) {
    TrigCurve8 c;
    for (int k = 0; k < 8; ++k) c.key[k] = degrees[k] * kDeg;
    return c;
}

// Normal-gait right-side key tables at the 8 canonical postures
// (contact, low, passing, high; right leading then left leading).
// The left side evaluates the same tables half a cycle later.
const TrigCurve8 kHip = curve({17, 11, 2, -10, -28, -18, -4, 8});
const TrigCurve8 kKnee = curve({8, 15, 6, 4, 10, 35, 60, 28});
const TrigCurve8 kAnkle = curve({5, 0, -2, -6, -12, -4, 4, 6});
const TrigCurve8 kShoulder = curve({-12, -8, -2, 5, 14, 9, 2, -6});
const TrigCurve8 kElbow = curve({14, 12, 10, 9, 12, 20, 26, 18});

// Half step: the right leg always reaches forward and steps with a raised
// knee, the left shuffles behind nearly straight. Hip amplitudes keep the
// right kneecap inside the 25-30% detection band through the whole cycle.
const TrigCurve8 kHsHipRight = curve({14, 10, 6, 4, 5, 10, 16, 15});
const TrigCurve8 kHsHipLeft = curve({-14, -12, -8, -4, -2, -6, -9, -12});
const TrigCurve8 kHsKneeRight = curve({18, 22, 15, 10, 10, 20, 22, 26});
const TrigCurve8 kHsKneeLeft = curve({1.2, 4.2, 7.2, 3.36, 0.96, 1.8, 0.72, 0.48});

constexpr double kBobRatio = 0.0104;  // pelvis bob amplitude as a fraction of height
constexpr double kLockedAbductionPeak = 15.0 * kDeg;

double wrap01(double t) {
    double f = t - std::floor(t);
    return f;
}

double pelvis_bob(double t) {
    // Lowest at the low postures (t = 1/8, 5/8), highest at the high ones.
    return -std::sin(4.0 * M_PI * t);
}

// Lateral circumduction arc of the locked left leg, raised during the left
// swing window and zero while the left foot bears weight.
double locked_abduction(double t) {
    double f = wrap01(t);
    if (f <= 0.08 || f >= 0.52) return 0.0;
    double s = std::sin(M_PI * (f - 0.08) / 0.44);
    return kLockedAbductionPeak * s * s;
}

struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 rot_x(double a) {
        double c = std::cos(a), s = std::sin(a);
        return {{1, 0, 0, 0, c, -s, 0, s, c}};
    }
    static Mat3 rot_z(double a) {
        double c = std::cos(a), s = std::sin(a);
        return {{c, -s, 0, s, c, 0, 0, 0, 1}};
    }
    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double sum = 0.0;
                for (int k = 0; k < 3; ++k) sum += m[i * 3 + k] * o.m[k * 3 + j];
                r.m[i * 3 + j] = sum;
            }
        return r;
    }
    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
};

// Flexion rotates about the lateral (x) axis; the sign below makes positive
// flexion move distal points forward (+z) for hip/shoulder/ankle conventions
// and backward for the knee.
Mat3 joint_rotation(int joint, const PoseAngles& a) {
    switch (joint) {
        case kHipL: {
            Mat3 flex = Mat3::rot_x(-a.hip_flexion[0]);
            return Mat3::rot_z(a.hip_abduction[0]) * flex;
        }
        case kHipR: {
            Mat3 flex = Mat3::rot_x(-a.hip_flexion[1]);
            return Mat3::rot_z(-a.hip_abduction[1]) * flex;
        }
        case kKneeL: return Mat3::rot_x(a.knee_flexion[0]);
        case kKneeR: return Mat3::rot_x(a.knee_flexion[1]);
        case kAnkleL: return Mat3::rot_x(-a.ankle_flexion[0]);
        case kAnkleR: return Mat3::rot_x(-a.ankle_flexion[1]);
        case kShoulderL: return Mat3::rot_x(-a.shoulder_flexion[0]);
        case kShoulderR: return Mat3::rot_x(-a.shoulder_flexion[1]);
        case kElbowL: return Mat3::rot_x(-a.elbow_flexion[0]);
        case kElbowR: return Mat3::rot_x(-a.elbow_flexion[1]);
        default: return Mat3{};
    }
}

}  // namespace

const char* to_string(GaitType gait) {
    switch (gait) {
        case GaitType::Normal: return "normal";
        case GaitType::LockedLeftKnee: return "locked-left-knee";
        case GaitType::HalfStep: return "half-step";
    }
    return "?";
}

const char* to_string(Phase phase) {
    switch (phase) {
        case Phase::Contact: return "contact";
        case Phase::Low: return "low";
        case Phase::Passing: return "passing";
        case Phase::High: return "high";
    }
    return "?";
}

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

void PoseAngles::check_limits() const {
    auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
    for (int s = 0; s < 2; ++s) {
        if (!in(hip_flexion[s], -1.2, 1.2))
            throw std::invalid_argument("hip flexion outside [-1.2, 1.2] rad");
        if (!in(knee_flexion[s], 0.0, 2.6))
            throw std::invalid_argument("knee flexion outside [0, 2.6] rad");
        if (!in(ankle_flexion[s], -0.9, 0.9))
            throw std::invalid_argument("ankle flexion outside [-0.9, 0.9] rad");
        if (!in(shoulder_flexion[s], -1.5, 1.5))
            throw std::invalid_argument("shoulder flexion outside [-1.5, 1.5] rad");
        if (!in(elbow_flexion[s], -0.2, 2.6))
            throw std::invalid_argument("elbow flexion outside [-0.2, 2.6] rad");
        if (!in(hip_abduction[s], -0.35, 1.0))
            throw std::invalid_argument("hip abduction outside [-0.35, 1.0] rad");
    }
}

PoseAngles mirrored(const PoseAngles& a) {
    PoseAngles m = a;
    std::swap(m.hip_flexion[0], m.hip_flexion[1]);
    std::swap(m.knee_flexion[0], m.knee_flexion[1]);
    std::swap(m.ankle_flexion[0], m.ankle_flexion[1]);
    std::swap(m.shoulder_flexion[0], m.shoulder_flexion[1]);
    std::swap(m.elbow_flexion[0], m.elbow_flexion[1]);
    std::swap(m.hip_abduction[0], m.hip_abduction[1]);
    m.pelvis_offset.x = -m.pelvis_offset.x;
    return m;
}

Vec3 JointTransform::apply(const Vec3& p) const {
    const auto& r = rotation;
    return {r[0] * p.x + r[1] * p.y + r[2] * p.z + translation.x,
            r[3] * p.x + r[4] * p.y + r[5] * p.z + translation.y,
            r[6] * p.x + r[7] * p.y + r[8] * p.z + translation.z};
}

std::array<JointTransform, kJointCount> pose_transforms(const Skeleton& skeleton,
                                                        const PoseAngles& angles) {
    angles.check_limits();
    std::array<Mat3, kJointCount> rot;
    std::array<Vec3, kJointCount> trans;

    for (int j = 0; j < kJointCount; ++j) {
        Mat3 local = joint_rotation(j, angles);
        const Vec3& pivot = skeleton.joints[j].rest;
        // Local transform: rotate about the joint's rest position.
        Vec3 local_t = pivot - local * pivot;
        int parent = skeleton.joints[j].parent;
        if (parent < 0) {
            rot[j] = local;
            trans[j] = local_t + angles.pelvis_offset;
        } else {
            rot[j] = rot[parent] * local;
            trans[j] = rot[parent] * local_t + trans[parent];
        }
    }

    std::array<JointTransform, kJointCount> out;
    for (int j = 0; j < kJointCount; ++j) {
        out[j].rotation = rot[j].m;
        out[j].translation = trans[j];
    }
    return out;
}

std::array<Vec3, kJointCount> posed_joints(const Skeleton& skeleton, const PoseAngles& angles) {
    auto tf = pose_transforms(skeleton, angles);
    std::array<Vec3, kJointCount> out;
    for (int j = 0; j < kJointCount; ++j) out[j] = tf[j].apply(skeleton.joints[j].rest);
    return out;
}

namespace {

Vec3 blend_point(const std::array<JointTransform, kJointCount>& tf,
                 const std::vector<std::pair<int, double>>& weights, const Vec3& rest) {
    Vec3 out{0, 0, 0};
    for (const auto& [bone, w] : weights) out += tf[bone].apply(rest) * w;
    return out;
}

}  // namespace

Vec3 posed_marker(const Body& body, const SurfaceMarker& marker, const PoseAngles& angles) {
    auto tf = pose_transforms(body.skeleton, angles);
    return blend_point(tf, marker.weights, marker.rest);
}

TriangleMesh pose_body(const Body& body, const PoseAngles& angles) {
    auto tf = pose_transforms(body.skeleton, angles);
    TriangleMesh out;
    out.triangles = body.rest_mesh.triangles;
    out.vertices.resize(body.rest_mesh.vertex_count());
    parallel_for(body.rest_mesh.vertex_count(), [&](std::size_t v) {
        out.vertices[v] =
            blend_point(tf, body.weights.vertex_weights[v], body.rest_mesh.vertices[v]);
    });
    return out;
}

PoseAngles gait_angles(GaitType gait, double phase_fraction, double hip_scale) {
    const double t = wrap01(phase_fraction);
    const double tl = wrap01(t + 0.5);  // left side runs half a cycle later

    PoseAngles a;
    a.shoulder_flexion = {kShoulder.eval(tl), kShoulder.eval(t)};
    a.elbow_flexion = {kElbow.eval(tl), kElbow.eval(t)};

    switch (gait) {
        case GaitType::Normal:
            a.hip_flexion = {hip_scale * kHip.eval(tl), hip_scale * kHip.eval(t)};
            a.knee_flexion = {kKnee.eval(tl), kKnee.eval(t)};
            a.ankle_flexion = {kAnkle.eval(tl), kAnkle.eval(t)};
            break;
        case GaitType::LockedLeftKnee:
            a.hip_flexion = {hip_scale * kHip.eval(tl), hip_scale * kHip.eval(t)};
            a.knee_flexion = {0.0, kKnee.eval(t)};
            a.ankle_flexion = {kAnkle.eval(tl), kAnkle.eval(t)};
            a.hip_abduction = {locked_abduction(t), 0.0};
            break;
        case GaitType::HalfStep:
            a.hip_flexion = {hip_scale * kHsHipLeft.eval(t), hip_scale * kHsHipRight.eval(t)};
            a.knee_flexion = {kHsKneeLeft.eval(t), kHsKneeRight.eval(t)};
            a.ankle_flexion = {0.3 * kAnkle.eval(tl), kAnkle.eval(t)};
            break;
    }
    for (int s = 0; s < 2; ++s) a.knee_flexion[s] = std::max(0.0, a.knee_flexion[s]);

    return a;
}

double step_length_at(const Body& body, double hip_scale) {
    PoseAngles contact = gait_angles(GaitType::Normal, 0.0, hip_scale);
    contact.pelvis_offset = {};  // bob is zero at contact anyway
    Vec3 heel_l = posed_marker(body, body.marker("heel_l"), contact);
    Vec3 heel_r = posed_marker(body, body.marker("heel_r"), contact);
    return heel_r.z - heel_l.z;  // right leads at fraction 0
}

double tune_hip_scale(const Body& body) {
    double lo = 0.4, hi = 1.8;
    double flo = step_length_at(body, lo) - body.params.step_length;
    double fhi = step_length_at(body, hi) - body.params.step_length;
    if (flo > 0.0 || fhi < 0.0)
        throw std::runtime_error("step length target unreachable by hip-amplitude tuning");
    for (int iter = 0; iter < 80; ++iter) {
        double mid = 0.5 * (lo + hi);
        double f = step_length_at(body, mid) - body.params.step_length;
        if (f >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

PostureLabel canonical_label(int slot) {
    static const Phase phases[4] = {Phase::Contact, Phase::Low, Phase::Passing, Phase::High};
    return {phases[slot % 4], slot < 4 ? Side::Right : Side::Left};
}

}  // namespace

GaitSequence synth_gait(const Body& body, GaitType gait, const SynthOptions& options) {
    if (options.cycles < 1) throw std::invalid_argument("need at least one cycle");
    if (options.frames_per_cycle < 8 || options.frames_per_cycle % 2 != 0)
        throw std::invalid_argument("frames_per_cycle must be even and >= 8");

    GaitSequence seq;
    seq.gait = gait;
    seq.cycles = options.cycles;
    seq.frames_per_cycle = options.frames_per_cycle;
    seq.body_height = body.params.height;
    seq.hip_scale = tune_hip_scale(body);

    const int total = options.cycles * options.frames_per_cycle;
    const double bob_amp = kBobRatio * body.params.height;
    seq.frames.resize(total);
    seq.labels.resize(total);
    seq.knee_markers.resize(total);
    seq.pelvis_offsets.resize(total);

    for (int f = 0; f < total; ++f) {
        int k = f % options.frames_per_cycle;
        double t = static_cast<double>(k) / options.frames_per_cycle;
        PoseAngles angles = gait_angles(gait, t, seq.hip_scale);
        angles.pelvis_offset = {0.0, bob_amp * pelvis_bob(t), 0.0};

        seq.labels[f] = canonical_label(k * 8 / options.frames_per_cycle);
        seq.pelvis_offsets[f] = angles.pelvis_offset;
        seq.frames[f] = pose_body(body, angles);
        seq.knee_markers[f] = {posed_marker(body, body.marker("knee_marker_l"), angles),
                               posed_marker(body, body.marker("knee_marker_r"), angles)};

        if (options.noise_sigma > 0.0) {
            std::mt19937_64 rng(options.noise_seed + 0x9e3779b97f4a7c15ull *
                                                         static_cast<std::uint64_t>(f + 1));
            std::normal_distribution<double> gauss(0.0, options.noise_sigma);
            std::vector<Vec3> normals = vertex_normals(seq.frames[f]);
            for (std::size_t v = 0; v < seq.frames[f].vertices.size(); ++v)
                seq.frames[f].vertices[v] += normals[v] * gauss(rng);
        }
    }
    return seq;
}

GaitSequence synth_gait(const BodyParams& params, GaitType gait, const SynthOptions& options) {
    return synth_gait(make_body(params), gait, options);
}

}  // namespace curvegait
