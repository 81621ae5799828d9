#include "oafem/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace oafem {

namespace {

std::string color_hex(double t) {
    int r = static_cast<int>(std::lround(255.0 * t));
    int b = 255 - r;
    int g = 64;
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

}  // namespace

std::string mesh_svg(const Mesh& mesh, const std::vector<double>& per_element) {
    const bool colored = !per_element.empty();
    if (colored && static_cast<int>(per_element.size()) != mesh.num_triangles())
        throw std::invalid_argument("mesh_svg: need one value per triangle");

    double xmin = mesh.vertices[0].x, xmax = xmin;
    double ymin = mesh.vertices[0].y, ymax = ymin;
    for (const auto& v : mesh.vertices) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    double span = std::max(xmax - xmin, ymax - ymin);
    if (span <= 0.0) span = 1.0;
    double margin = 0.02 * span;

    double vmin = 0.0, vmax = 0.0;
    if (colored) {
        vmin = *std::min_element(per_element.begin(), per_element.end());
        vmax = *std::max_element(per_element.begin(), per_element.end());
    }

    auto fx = [&](double x) { return format_double_shortest(x); };
    // SVG y grows downward; flip about the bounding box.
    auto fy = [&](double y) { return format_double_shortest(ymax + ymin - y); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"";
    s += fx(xmin - margin) + " " + format_double_shortest(ymin - margin) + " " +
         format_double_shortest(xmax - xmin + 2.0 * margin) + " " +
         format_double_shortest(ymax - ymin + 2.0 * margin) + "\" width=\"800\" height=\"800\">\n";
    if (colored)
        s += "<!-- colormap: linear, blue at min=" + format_double_shortest(vmin) +
             ", red at max=" + format_double_shortest(vmax) + " -->\n";
    s += "<g stroke=\"#000000\" stroke-width=\"" + format_double_shortest(0.002 * span) + "\"" +
         (colored ? std::string() : std::string(" fill=\"none\"")) + ">\n";
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        auto c = mesh.corners(t);
        s += "<polygon points=\"";
        for (int i = 0; i < 3; ++i) {
            if (i) s += " ";
            s += fx(c[i].x) + "," + fy(c[i].y);
        }
        s += "\"";
        if (colored) {
            double tval = vmax > vmin ? (per_element[t] - vmin) / (vmax - vmin) : 0.5;
            s += " fill=\"" + color_hex(tval) + "\"";
        }
        s += "/>\n";
    }
    s += "</g>\n</svg>\n";
    return s;
}

void write_svg(const Mesh& mesh, const std::vector<double>& per_element,
               const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << mesh_svg(mesh, per_element);
    if (!out) throw std::runtime_error("failed to write " + path);
}

}  // namespace oafem
