// OBJ and PLY reading/writing.
//
// OBJ: ASCII, "v x y z [r g b]" (colors as 0..1 floats) and 1-based "f" lines;
//      "#" comments and unrelated directives are ignored; polygons are
//      fan-triangulated from their first vertex.
// PLY: ascii and binary_little_endian accepted on load; binary_little_endian
//      written. Vertex colors are uchar properties red/green/blue.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "curvegait/mesh.hpp"

namespace curvegait {

enum class MeshFormat { Obj, Ply };

struct LoadedMesh {
    TriangleMesh mesh;
    std::vector<Rgb> colors;  // empty when the file carries no vertex colors
};

// Parse a whole file held in memory. Throws std::runtime_error with a
// line/element description on malformed input or out-of-range indices.
LoadedMesh load_mesh(std::string_view bytes, MeshFormat format);

// Serialize. colors, when present, must have one entry per vertex
// (std::invalid_argument otherwise). Floats are written with 9 significant
// digits in OBJ; PLY positions are float32.
std::string save_mesh(const TriangleMesh& mesh, MeshFormat format,
                      const std::vector<Rgb>* colors = nullptr);

// .obj / .ply by extension (case-insensitive); throws on anything else.
MeshFormat format_from_path(const std::filesystem::path& path);

LoadedMesh read_mesh_file(const std::filesystem::path& path);

// Writes through a temp file in the same directory then renames, so an
// interrupted run never leaves a partial mesh behind.
void write_mesh_file(const std::filesystem::path& path, const TriangleMesh& mesh,
                     const std::vector<Rgb>* colors = nullptr);

// Same temp+rename discipline for text payloads (CSV/JSON).
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace curvegait
