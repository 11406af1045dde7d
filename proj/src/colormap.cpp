#include "curvegait/colormap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curvegait {

void ColorScale::check() const {
    if (!(vmin < vmax)) throw std::invalid_argument("color scale needs vmin < vmax");
    if (!(vmin <= center && center <= vmax))
        throw std::invalid_argument("color scale center outside [vmin, vmax]");
    if (mode == ScaleMode::SymmetricAboutCenter) {
        double up = vmax - center, down = center - vmin;
        if (std::abs(up - down) > 1e-12 * std::max(up, down))
            throw std::invalid_argument("symmetric color scale must be centered");
    }
    if (!(gamma > 0.0)) throw std::invalid_argument("color scale gamma must be positive");
}

Rgb map_to_color(double value, const ColorScale& scale) {
    auto channel = [](double x) {
        double v = std::floor(x * 255.0 + 0.5);  // round half up, matching both halves
        if (v < 0.0) v = 0.0;
        if (v > 255.0) v = 255.0;
        return static_cast<std::uint8_t>(v);
    };
    if (value <= scale.vmin) return {0, 0, 255};
    if (value >= scale.vmax) return {255, 0, 0};
    if (value < scale.center) {
        double t = (scale.center - value) / (scale.center - scale.vmin);  // 0 green .. 1 blue
        if (scale.gamma != 1.0) t = std::pow(t, scale.gamma);
        return {0, channel(1.0 - t), channel(t)};
    }
    double t = (value - scale.center) / (scale.vmax - scale.center);  // 0 green .. 1 red
    if (scale.gamma != 1.0) t = std::pow(t, scale.gamma);
    return {channel(t), channel(1.0 - t), 0};
}

std::vector<Rgb> colorize(const std::vector<double>& values, const ColorScale& scale) {
    scale.check();
    std::vector<Rgb> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(map_to_color(v, scale));
    return out;
}

std::vector<Rgb> colorize_mesh(const TriangleMesh& mesh, const std::vector<double>& values,
                               const ColorScale& scale) {
    if (values.size() != mesh.vertex_count())
        throw std::invalid_argument("field length does not match vertex count");
    return colorize(values, scale);
}

double percentile(std::vector<double> data, double p) {
    if (data.empty()) throw std::invalid_argument("percentile of an empty range");
    if (p < 0.0 || p > 100.0) throw std::invalid_argument("percentile outside [0, 100]");
    std::sort(data.begin(), data.end());
    double pos = p / 100.0 * static_cast<double>(data.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, data.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return data[lo] + frac * (data[hi] - data[lo]);
}

ColorScale auto_scale(const std::vector<double>& values, ScaleMode mode, double center) {
    if (values.empty()) throw std::invalid_argument("auto_scale of an empty field");
    ColorScale scale;
    scale.mode = mode;
    scale.center = center;
    if (mode == ScaleMode::MinMax) {
        auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        scale.vmin = *lo;
        scale.vmax = *hi;
        if (scale.vmin == scale.vmax) {
            scale.vmin -= 0.5;
            scale.vmax += 0.5;
        }
        scale.center = 0.5 * (scale.vmin + scale.vmax);
        return scale;
    }
    std::vector<double> centered;
    centered.reserve(values.size());
    for (double v : values) centered.push_back(v - center);
    double width = std::max(std::abs(percentile(centered, 2.0)),
                            std::abs(percentile(centered, 98.0)));
    if (width <= 0.0) width = 1.0;  // constant field fallback
    scale.vmin = center - width;
    scale.vmax = center + width;
    return scale;
}

}  // namespace curvegait
