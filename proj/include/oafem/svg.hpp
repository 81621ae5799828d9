#pragma once

#include <string>
#include <vector>

#include "oafem/mesh.hpp"

namespace oafem {

// SVG 1.1 rendering of the mesh, one polygon per triangle.  A per-element
// value vector (one entry per triangle) colors fills linearly from blue at
// the minimum to red at the maximum; an empty vector draws a wireframe.
// Output bytes are deterministic for a given mesh and value vector.
std::string mesh_svg(const Mesh& mesh, const std::vector<double>& per_element);
void write_svg(const Mesh& mesh, const std::vector<double>& per_element,
               const std::string& path);

}  // namespace oafem
