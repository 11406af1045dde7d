#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curvegait/colormap.hpp"
#include "curvegait/curvature.hpp"
#include "curvegait/primitives.hpp"

using namespace curvegait;

namespace {

ColorScale symmetric(double width) {
    ColorScale s;
    s.vmin = -width;
    s.vmax = width;
    s.center = 0.0;
    s.mode = ScaleMode::SymmetricAboutCenter;
    return s;
}

}  // namespace

TEST_CASE("anchor colors: blue / green / red") {
    ColorScale s = symmetric(2.0);
    CHECK(map_to_color(0.0, s) == Rgb{0, 255, 0});
    CHECK(map_to_color(2.0, s) == Rgb{255, 0, 0});
    CHECK(map_to_color(5.0, s) == Rgb{255, 0, 0});  // clamp
    CHECK(map_to_color(-2.0, s) == Rgb{0, 0, 255});
    CHECK(map_to_color(-9.0, s) == Rgb{0, 0, 255});
}

TEST_CASE("midpoint blue-green rounds half up") {
    ColorScale s = symmetric(2.0);
    CHECK(map_to_color(-1.0, s) == Rgb{0, 128, 128});  // vmin/2
    CHECK(map_to_color(1.0, s) == Rgb{128, 128, 0});
}

TEST_CASE("monotone: red non-decreasing, blue non-increasing") {
    ColorScale s = symmetric(1.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        double a = u(rng), b = u(rng);
        if (a > b) std::swap(a, b);
        Rgb ca = map_to_color(a, s), cb = map_to_color(b, s);
        CHECK(ca.r <= cb.r);
        CHECK(ca.b >= cb.b);
    }
}

TEST_CASE("symmetric scale swaps blue and red for +/- v") {
    ColorScale s = symmetric(3.0);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        double v = u(rng);
        Rgb pos = map_to_color(v, s), neg = map_to_color(-v, s);
        CHECK(pos.r == neg.b);
        CHECK(pos.b == neg.r);
        CHECK(pos.g == neg.g);
    }
}

TEST_CASE("clamped field agrees inside the range") {
    ColorScale s = symmetric(1.0);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        double v = u(rng);
        double clamped = std::min(s.vmax, std::max(s.vmin, v * 3.0));
        if (v * 3.0 >= s.vmin && v * 3.0 <= s.vmax)
            CHECK(map_to_color(v * 3.0, s) == map_to_color(clamped, s));
    }
}

TEST_CASE("auto scale: uniform -2..2 gives 1.92") {
    std::vector<double> values;
    for (int i = 0; i <= 200; ++i) values.push_back(-2.0 + 0.02 * i);
    ColorScale s = auto_scale(values);
    CHECK(s.vmax == doctest::Approx(1.92).epsilon(1e-12));
    CHECK(s.vmin == doctest::Approx(-1.92).epsilon(1e-12));
}

TEST_CASE("auto scale: constant and single-value fields") {
    ColorScale zeros = auto_scale(std::vector<double>(64, 0.0));
    CHECK(zeros.vmax == 1.0);  // documented fallback width
    ColorScale single = auto_scale({5.0});
    CHECK(single.vmax == 5.0);
    CHECK_THROWS_AS(auto_scale({}), std::invalid_argument);
}

TEST_CASE("auto scale: at most 4% of samples clamp") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> values;
    for (int i = 0; i < 5000; ++i) values.push_back(gauss(rng));
    ColorScale s = auto_scale(values);
    std::size_t clamped = 0;
    for (double v : values)
        if (v < s.vmin || v > s.vmax) ++clamped;
    CHECK(clamped <= values.size() / 25 + 2);
}

TEST_CASE("colorize: constant zero field is all green") {
    TriangleMesh sphere = icosphere(1);
    std::vector<double> field(sphere.vertex_count(), 0.0);
    std::vector<Rgb> colors = colorize_mesh(sphere, field, symmetric(1.0));
    for (const Rgb& c : colors) CHECK(c == Rgb{0, 255, 0});
}

TEST_CASE("colorize: sphere gaussian field sits on the red side") {
    TriangleMesh sphere = icosphere(3);
    CurvatureField field = curvature_field(sphere);
    ColorScale s = auto_scale(field.gaussian);
    std::vector<Rgb> colors = colorize_mesh(sphere, field.gaussian, s);
    for (const Rgb& c : colors) {
        CHECK(c.b == 0);  // K > 0 everywhere on a sphere
        CHECK(c.r > 0);
    }
}

TEST_CASE("colorize: length mismatch throws") {
    TriangleMesh sphere = icosphere(1);
    CHECK_THROWS_AS(colorize_mesh(sphere, std::vector<double>(3, 0.0), symmetric(1.0)),
                    std::invalid_argument);
}

TEST_CASE("gamma shapes the ramp but keeps anchors") {
    ColorScale s = symmetric(1.0);
    s.gamma = 2.0;
    CHECK(map_to_color(0.0, s) == Rgb{0, 255, 0});
    CHECK(map_to_color(1.0, s) == Rgb{255, 0, 0});
    // Halfway value maps closer to green under gamma > 1.
    CHECK(map_to_color(0.5, s).r < 128);
}
