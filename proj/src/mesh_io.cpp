#include "curvegait/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace curvegait {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

std::string_view next_line(std::string_view& rest) {
    std::size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = (nl == std::string_view::npos) ? std::string_view{} : rest.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_double(std::string_view tok, std::size_t line_no) {
    // std::from_chars(double) is available on this toolchain; strtod fallback
    // would need a null-terminated copy.
    double value = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        fail("line " + std::to_string(line_no) + ": bad number '" + std::string(tok) + "'");
    return value;
}

long parse_long(std::string_view tok, std::size_t line_no) {
    long value = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        fail("line " + std::to_string(line_no) + ": bad integer '" + std::string(tok) + "'");
    return value;
}

std::uint8_t to_color_byte(double c01) {
    double v = c01 * 255.0 + 0.5;
    if (v < 0.0) v = 0.0;
    if (v > 255.0) v = 255.0;
    return static_cast<std::uint8_t>(v);
}

void append_fan(std::vector<Triangle>& triangles, const std::vector<int>& poly,
                std::size_t line_no) {
    if (poly.size() < 3) fail("line " + std::to_string(line_no) + ": face with < 3 vertices");
    for (std::size_t k = 1; k + 1 < poly.size(); ++k)
        triangles.push_back({poly[0], poly[static_cast<int>(k)], poly[static_cast<int>(k + 1)]});
}

LoadedMesh load_obj(std::string_view bytes) {
    LoadedMesh out;
    bool any_color = false;
    std::string_view rest = bytes;
    std::size_t line_no = 0;
    while (!rest.empty() || line_no == 0) {
        if (rest.empty()) break;
        std::string_view line = next_line(rest);
        ++line_no;
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "v") {
            if (toks.size() != 4 && toks.size() != 7)
                fail("line " + std::to_string(line_no) + ": 'v' needs 3 or 6 numbers");
            out.mesh.vertices.push_back({parse_double(toks[1], line_no),
                                         parse_double(toks[2], line_no),
                                         parse_double(toks[3], line_no)});
            if (toks.size() == 7) {
                out.colors.push_back({to_color_byte(parse_double(toks[4], line_no)),
                                      to_color_byte(parse_double(toks[5], line_no)),
                                      to_color_byte(parse_double(toks[6], line_no))});
                any_color = true;
            } else {
                out.colors.push_back({});
            }
        } else if (toks[0] == "f") {
            std::vector<int> poly;
            for (std::size_t k = 1; k < toks.size(); ++k) {
                std::string_view ref = toks[k];
                std::size_t slash = ref.find('/');
                if (slash != std::string_view::npos) ref = ref.substr(0, slash);
                long idx = parse_long(ref, line_no);
                long nv = static_cast<long>(out.mesh.vertices.size());
                if (idx < 0) idx = nv + 1 + idx;  // OBJ relative indexing
                if (idx < 1 || idx > nv)
                    fail("line " + std::to_string(line_no) + ": vertex index " +
                         std::string(toks[k]) + " out of range (have " + std::to_string(nv) +
                         " vertices)");
                poly.push_back(static_cast<int>(idx - 1));
            }
            append_fan(out.mesh.triangles, poly, line_no);
        }
        // vn/vt/o/g/s/usemtl/mtllib and anything else: ignored.
    }
    if (!any_color) out.colors.clear();
    out.mesh.check_structure();
    return out;
}

// --- PLY ---

enum class PlyType { Char, Uchar, Short, Ushort, Int, Uint, Float, Double };

std::size_t ply_type_size(PlyType t) {
    switch (t) {
        case PlyType::Char:
        case PlyType::Uchar: return 1;
        case PlyType::Short:
        case PlyType::Ushort: return 2;
        case PlyType::Int:
        case PlyType::Uint:
        case PlyType::Float: return 4;
        case PlyType::Double: return 8;
    }
    return 0;
}

PlyType ply_type_from(std::string_view name) {
    if (name == "char" || name == "int8") return PlyType::Char;
    if (name == "uchar" || name == "uint8") return PlyType::Uchar;
    if (name == "short" || name == "int16") return PlyType::Short;
    if (name == "ushort" || name == "uint16") return PlyType::Ushort;
    if (name == "int" || name == "int32") return PlyType::Int;
    if (name == "uint" || name == "uint32") return PlyType::Uint;
    if (name == "float" || name == "float32") return PlyType::Float;
    if (name == "double" || name == "float64") return PlyType::Double;
    fail("ply: unknown type '" + std::string(name) + "'");
}

struct PlyProperty {
    std::string name;
    PlyType type = PlyType::Float;
    bool is_list = false;
    PlyType count_type = PlyType::Uchar;
};

struct PlyElement {
    std::string name;
    std::size_t count = 0;
    std::vector<PlyProperty> properties;
};

double read_binary_scalar(const char*& p, const char* end, PlyType t) {
    std::size_t n = ply_type_size(t);
    if (p + n > end) fail("ply: truncated binary payload");
    double v = 0.0;
    switch (t) {
        case PlyType::Char: { std::int8_t x; std::memcpy(&x, p, 1); v = x; break; }
        case PlyType::Uchar: { std::uint8_t x; std::memcpy(&x, p, 1); v = x; break; }
        case PlyType::Short: { std::int16_t x; std::memcpy(&x, p, 2); v = x; break; }
        case PlyType::Ushort: { std::uint16_t x; std::memcpy(&x, p, 2); v = x; break; }
        case PlyType::Int: { std::int32_t x; std::memcpy(&x, p, 4); v = x; break; }
        case PlyType::Uint: { std::uint32_t x; std::memcpy(&x, p, 4); v = x; break; }
        case PlyType::Float: { float x; std::memcpy(&x, p, 4); v = x; break; }
        case PlyType::Double: { double x; std::memcpy(&x, p, 8); v = x; break; }
    }
    p += n;
    return v;
}

LoadedMesh load_ply(std::string_view bytes) {
    std::string_view rest = bytes;
    std::size_t line_no = 0;

    auto header_line = [&]() {
        if (rest.empty()) fail("ply: header ends before end_header");
        ++line_no;
        return next_line(rest);
    };

    if (split_ws(header_line()) != std::vector<std::string_view>{"ply"}) fail("ply: missing magic");

    bool binary = false;
    std::vector<PlyElement> elements;
    while (true) {
        auto toks = split_ws(header_line());
        if (toks.empty() || toks[0] == "comment" || toks[0] == "obj_info") continue;
        if (toks[0] == "end_header") break;
        if (toks[0] == "format") {
            if (toks.size() < 2) fail("ply: malformed format line");
            if (toks[1] == "ascii") binary = false;
            else if (toks[1] == "binary_little_endian") binary = true;
            else fail("ply: unsupported format '" + std::string(toks[1]) + "'");
        } else if (toks[0] == "element") {
            if (toks.size() != 3) fail("ply: malformed element line");
            elements.push_back({std::string(toks[1]),
                                static_cast<std::size_t>(parse_long(toks[2], line_no)),
                                {}});
        } else if (toks[0] == "property") {
            if (elements.empty()) fail("ply: property before element");
            PlyProperty prop;
            if (toks.size() == 5 && toks[1] == "list") {
                prop.is_list = true;
                prop.count_type = ply_type_from(toks[2]);
                prop.type = ply_type_from(toks[3]);
                prop.name = std::string(toks[4]);
            } else if (toks.size() == 3) {
                prop.type = ply_type_from(toks[1]);
                prop.name = std::string(toks[2]);
            } else {
                fail("ply: malformed property line");
            }
            elements.back().properties.push_back(prop);
        } else {
            fail("ply: unexpected header line starting '" + std::string(toks[0]) + "'");
        }
    }

    LoadedMesh out;
    bool has_color = false;

    const char* bin = rest.data();
    const char* bin_end = rest.data() + rest.size();
    std::vector<std::string_view> ascii_toks;
    std::size_t ascii_pos = 0;
    auto next_ascii = [&]() -> std::string_view {
        while (ascii_pos >= ascii_toks.size()) {
            if (rest.empty()) fail("ply: truncated ascii payload");
            ascii_toks = split_ws(next_line(rest));
            ++line_no;
            ascii_pos = 0;
        }
        return ascii_toks[ascii_pos++];
    };
    auto read_scalar = [&](PlyType t) -> double {
        if (binary) return read_binary_scalar(bin, bin_end, t);
        return parse_double(next_ascii(), line_no);
    };

    for (const PlyElement& elem : elements) {
        if (elem.name == "vertex") {
            int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
            for (std::size_t p = 0; p < elem.properties.size(); ++p) {
                const std::string& n = elem.properties[p].name;
                if (n == "x") ix = static_cast<int>(p);
                else if (n == "y") iy = static_cast<int>(p);
                else if (n == "z") iz = static_cast<int>(p);
                else if (n == "red") ir = static_cast<int>(p);
                else if (n == "green") ig = static_cast<int>(p);
                else if (n == "blue") ib = static_cast<int>(p);
            }
            if (ix < 0 || iy < 0 || iz < 0) fail("ply: vertex element lacks x/y/z");
            has_color = ir >= 0 && ig >= 0 && ib >= 0;
            out.mesh.vertices.reserve(elem.count);
            std::vector<double> scratch(elem.properties.size());
            for (std::size_t v = 0; v < elem.count; ++v) {
                for (std::size_t p = 0; p < elem.properties.size(); ++p) {
                    if (elem.properties[p].is_list) {
                        // Unexpected on vertices; skip the whole list.
                        std::size_t n =
                            static_cast<std::size_t>(read_scalar(elem.properties[p].count_type));
                        for (std::size_t k = 0; k < n; ++k) read_scalar(elem.properties[p].type);
                        scratch[p] = 0.0;
                    } else {
                        scratch[p] = read_scalar(elem.properties[p].type);
                    }
                }
                out.mesh.vertices.push_back({scratch[ix], scratch[iy], scratch[iz]});
                if (has_color)
                    out.colors.push_back({static_cast<std::uint8_t>(scratch[ir]),
                                          static_cast<std::uint8_t>(scratch[ig]),
                                          static_cast<std::uint8_t>(scratch[ib])});
            }
        } else if (elem.name == "face") {
            for (std::size_t f = 0; f < elem.count; ++f) {
                std::vector<int> poly;
                for (const PlyProperty& prop : elem.properties) {
                    if (prop.is_list) {
                        std::size_t n = static_cast<std::size_t>(read_scalar(prop.count_type));
                        poly.clear();
                        for (std::size_t k = 0; k < n; ++k) {
                            long idx = static_cast<long>(read_scalar(prop.type));
                            if (idx < 0 || idx >= static_cast<long>(out.mesh.vertices.size()))
                                fail("ply: face " + std::to_string(f) + " vertex index " +
                                     std::to_string(idx) + " out of range");
                            poly.push_back(static_cast<int>(idx));
                        }
                    } else {
                        read_scalar(prop.type);
                    }
                }
                append_fan(out.mesh.triangles, poly, line_no);
            }
        } else {
            // Unknown element: consume and drop.
            for (std::size_t e = 0; e < elem.count; ++e) {
                for (const PlyProperty& prop : elem.properties) {
                    if (prop.is_list) {
                        std::size_t n = static_cast<std::size_t>(read_scalar(prop.count_type));
                        for (std::size_t k = 0; k < n; ++k) read_scalar(prop.type);
                    } else {
                        read_scalar(prop.type);
                    }
                }
            }
        }
    }

    if (!has_color) out.colors.clear();
    out.mesh.check_structure();
    return out;
}

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string save_obj(const TriangleMesh& mesh, const std::vector<Rgb>* colors) {
    std::string out;
    out.reserve(mesh.vertex_count() * 32 + mesh.triangle_count() * 16);
    out += "# curvegait mesh\n";
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        const Vec3& p = mesh.vertices[v];
        out += "v ";
        out += format_g9(p.x);
        out += ' ';
        out += format_g9(p.y);
        out += ' ';
        out += format_g9(p.z);
        if (colors) {
            const Rgb& c = (*colors)[v];
            out += ' ';
            out += format_g9(c.r / 255.0);
            out += ' ';
            out += format_g9(c.g / 255.0);
            out += ' ';
            out += format_g9(c.b / 255.0);
        }
        out += '\n';
    }
    for (const Triangle& t : mesh.triangles) {
        out += "f ";
        out += std::to_string(t[0] + 1);
        out += ' ';
        out += std::to_string(t[1] + 1);
        out += ' ';
        out += std::to_string(t[2] + 1);
        out += '\n';
    }
    return out;
}

template <typename T>
void put_raw(std::string& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

std::string save_ply(const TriangleMesh& mesh, const std::vector<Rgb>* colors) {
    std::string out;
    out += "ply\nformat binary_little_endian 1.0\ncomment curvegait mesh\n";
    out += "element vertex " + std::to_string(mesh.vertex_count()) + "\n";
    out += "property float x\nproperty float y\nproperty float z\n";
    if (colors) out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    out += "element face " + std::to_string(mesh.triangle_count()) + "\n";
    out += "property list uchar int vertex_indices\n";
    out += "end_header\n";
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        const Vec3& p = mesh.vertices[v];
        put_raw(out, static_cast<float>(p.x));
        put_raw(out, static_cast<float>(p.y));
        put_raw(out, static_cast<float>(p.z));
        if (colors) {
            const Rgb& c = (*colors)[v];
            put_raw(out, c.r);
            put_raw(out, c.g);
            put_raw(out, c.b);
        }
    }
    for (const Triangle& t : mesh.triangles) {
        put_raw(out, static_cast<std::uint8_t>(3));
        put_raw(out, static_cast<std::int32_t>(t[0]));
        put_raw(out, static_cast<std::int32_t>(t[1]));
        put_raw(out, static_cast<std::int32_t>(t[2]));
    }
    return out;
}

}  // namespace

LoadedMesh load_mesh(std::string_view bytes, MeshFormat format) {
    return format == MeshFormat::Obj ? load_obj(bytes) : load_ply(bytes);
}

std::string save_mesh(const TriangleMesh& mesh, MeshFormat format,
                      const std::vector<Rgb>* colors) {
    mesh.check_structure();
    if (colors && colors->size() != mesh.vertex_count())
        throw std::invalid_argument("color count (" + std::to_string(colors->size()) +
                                    ") does not match vertex count (" +
                                    std::to_string(mesh.vertex_count()) + ")");
    return format == MeshFormat::Obj ? save_obj(mesh, colors) : save_ply(mesh, colors);
}

MeshFormat format_from_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".obj") return MeshFormat::Obj;
    if (ext == ".ply") return MeshFormat::Ply;
    throw std::runtime_error("unsupported mesh extension '" + ext + "' (want .obj or .ply)");
}

LoadedMesh read_mesh_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_mesh(ss.str(), format_from_path(path));
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

void write_mesh_file(const std::filesystem::path& path, const TriangleMesh& mesh,
                     const std::vector<Rgb>* colors) {
    write_text_file(path, save_mesh(mesh, format_from_path(path), colors));
}

}  // namespace curvegait
