#include "oafem/mesh.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace oafem {

namespace {

using EdgeKey = std::pair<int, int>;

EdgeKey edge_key(int a, int b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

struct Incidence {
    EdgeKey key;
    int tri;
    int local;
};

std::vector<Incidence> edge_incidence(const Mesh& mesh) {
    std::vector<Incidence> inc;
    inc.reserve(3 * mesh.triangles.size());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& v = mesh.triangles[t].v;
        for (int l = 0; l < 3; ++l)
            inc.push_back({edge_key(v[(l + 1) % 3], v[(l + 2) % 3]), t, l});
    }
    std::sort(inc.begin(), inc.end(), [](const Incidence& x, const Incidence& y) {
        return x.key != y.key ? x.key < y.key : x.tri < y.tri;
    });
    return inc;
}

void check_vertex_indices(const std::vector<std::array<int, 3>>& tris, int nv) {
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& v = tris[t];
        for (int i = 0; i < 3; ++i)
            if (v[i] < 0 || v[i] >= nv)
                throw std::invalid_argument("triangle " + std::to_string(t) +
                                            " references vertex " + std::to_string(v[i]) +
                                            " out of range");
        if (v[0] == v[1] || v[1] == v[2] || v[0] == v[2])
            throw std::invalid_argument("triangle " + std::to_string(t) +
                                        " has repeated vertices");
    }
}

void check_duplicate_vertices(const std::vector<Vec2>& coords) {
    constexpr double tol = 1e-12;
    std::vector<int> order(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return coords[i].x != coords[j].x ? coords[i].x < coords[j].x : coords[i].y < coords[j].y;
    });
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if (coords[order[j]].x - coords[order[i]].x > tol) break;
            if (distance(coords[order[i]], coords[order[j]]) <= tol)
                throw std::invalid_argument("duplicate vertices " + std::to_string(order[i]) +
                                            " and " + std::to_string(order[j]));
        }
    }
}

void orient_and_check_area(const std::vector<Vec2>& coords, std::vector<std::array<int, 3>>& tris) {
    for (std::size_t t = 0; t < tris.size(); ++t) {
        auto& v = tris[t];
        double a2 = signed_area2(coords[v[0]], coords[v[1]], coords[v[2]]);
        if (a2 < 0.0) {
            std::swap(v[1], v[2]);
            a2 = -a2;
        }
        double h = std::max({distance(coords[v[0]], coords[v[1]]),
                             distance(coords[v[1]], coords[v[2]]),
                             distance(coords[v[2]], coords[v[0]])});
        if (!(a2 > 1e-14 * h * h))
            throw std::invalid_argument("triangle " + std::to_string(t) + " is degenerate");
    }
}

int longest_edge_local(const std::vector<Vec2>& coords, const std::array<int, 3>& v) {
    double best_len = -1.0;
    int best = 0;
    for (int l = 0; l < 3; ++l) {
        double len = norm_sq(coords[v[(l + 2) % 3]] - coords[v[(l + 1) % 3]]);
        if (len > best_len || (len == best_len && v[l] < v[best])) {
            best_len = len;
            best = l;
        }
    }
    return best;
}

// Shared topology checks plus boundary flags.  Incidence must be sorted.
std::vector<std::uint8_t> boundary_flags_checked(const Mesh& mesh,
                                                 const std::vector<Incidence>& inc) {
    std::vector<std::uint8_t> flags(mesh.vertices.size(), 0);
    for (std::size_t i = 0; i < inc.size();) {
        std::size_t j = i;
        while (j < inc.size() && inc[j].key == inc[i].key) ++j;
        const std::size_t count = j - i;
        if (count > 2)
            throw std::invalid_argument("edge (" + std::to_string(inc[i].key.first) + ", " +
                                        std::to_string(inc[i].key.second) + ") is shared by " +
                                        std::to_string(count) + " triangles");
        if (count == 2) {
            // Counterclockwise triangles traverse a shared edge in opposite directions.
            const auto& u = mesh.triangles[inc[i].tri].v;
            const auto& w = mesh.triangles[inc[i + 1].tri].v;
            int ua = u[(inc[i].local + 1) % 3];
            int wa = w[(inc[i + 1].local + 1) % 3];
            if (ua == wa)
                throw std::invalid_argument("inconsistent orientation across edge (" +
                                            std::to_string(inc[i].key.first) + ", " +
                                            std::to_string(inc[i].key.second) + ")");
        } else {
            flags[inc[i].key.first] = 1;
            flags[inc[i].key.second] = 1;
        }
        i = j;
    }
    return flags;
}

void check_hanging_nodes(const Mesh& mesh, const std::vector<Incidence>& inc) {
    // A hanging node shows up as a vertex strictly inside a single-incidence
    // edge: the finer side sees two edges where the coarse side sees one.
    for (std::size_t i = 0; i < inc.size();) {
        std::size_t j = i;
        while (j < inc.size() && inc[j].key == inc[i].key) ++j;
        if (j - i == 1) {
            Vec2 a = mesh.vertices[inc[i].key.first];
            Vec2 b = mesh.vertices[inc[i].key.second];
            Vec2 d = b - a;
            double len2 = norm_sq(d);
            for (int v = 0; v < mesh.num_vertices(); ++v) {
                if (v == inc[i].key.first || v == inc[i].key.second) continue;
                double s = dot(mesh.vertices[v] - a, d) / len2;
                if (s <= 1e-12 || s >= 1.0 - 1e-12) continue;
                Vec2 foot = a + s * d;
                if (distance(mesh.vertices[v], foot) <= 1e-12 * std::sqrt(len2))
                    throw std::invalid_argument("hanging node: vertex " + std::to_string(v) +
                                                " lies inside edge (" +
                                                std::to_string(inc[i].key.first) + ", " +
                                                std::to_string(inc[i].key.second) + ")");
            }
        }
        i = j;
    }
}

Mesh assemble_mesh(std::vector<Vec2> coords, std::vector<Triangle> tris, GeometryTag geometry) {
    Mesh mesh;
    mesh.vertices = std::move(coords);
    mesh.triangles = std::move(tris);
    mesh.geometry = geometry;
    auto inc = edge_incidence(mesh);
    mesh.vertex_on_boundary = boundary_flags_checked(mesh, inc);
    return mesh;
}

}  // namespace

Mesh build_mesh(std::vector<Vec2> coords, std::vector<std::array<int, 3>> tris,
                GeometryTag geometry) {
    if (coords.empty() || tris.empty())
        throw std::invalid_argument("mesh needs at least one vertex and one triangle");
    check_vertex_indices(tris, static_cast<int>(coords.size()));
    check_duplicate_vertices(coords);
    orient_and_check_area(coords, tris);
    std::vector<Triangle> full(tris.size());
    for (std::size_t t = 0; t < tris.size(); ++t) {
        full[t].v = tris[t];
        full[t].refinement_edge = longest_edge_local(coords, tris[t]);
    }
    Mesh mesh = assemble_mesh(std::move(coords), std::move(full), geometry);
    check_hanging_nodes(mesh, edge_incidence(mesh));
    return mesh;
}

EdgeSet edge_topology(const Mesh& mesh) {
    EdgeSet set;
    auto inc = edge_incidence(mesh);
    for (std::size_t i = 0; i < inc.size();) {
        std::size_t j = i;
        while (j < inc.size() && inc[j].key == inc[i].key) ++j;
        Vec2 pa = mesh.vertices[inc[i].key.first];
        Vec2 pb = mesh.vertices[inc[i].key.second];
        double len = distance(pa, pb);
        if (j - i == 1) {
            set.boundary.push_back({inc[i].key.first, inc[i].key.second, inc[i].tri,
                                    inc[i].local, len});
        } else {
            InteriorEdge e;
            e.a = inc[i].key.first;
            e.b = inc[i].key.second;
            e.tri_plus = inc[i].tri;
            e.tri_minus = inc[i + 1].tri;
            e.local_plus = inc[i].local;
            e.local_minus = inc[i + 1].local;
            e.length = len;
            const auto& v = mesh.triangles[e.tri_plus].v;
            Vec2 from = mesh.vertices[v[(e.local_plus + 1) % 3]];
            Vec2 to = mesh.vertices[v[(e.local_plus + 2) % 3]];
            // Outward normal of tri_plus: the edge runs counterclockwise, so
            // the -90 degree rotation of its direction points out of tri_plus.
            Vec2 n = perp(to - from) / len;
            e.normal_plus = {-n.x, -n.y};
            set.interior.push_back(e);
        }
        i = j;
    }
    set.h_T.resize(mesh.triangles.size());
    for (int t = 0; t < mesh.num_triangles(); ++t) set.h_T[t] = triangle_diameter(mesh, t);
    return set;
}

double triangle_area(const Mesh& mesh, int t) {
    auto c = mesh.corners(t);
    return oafem::triangle_area(c[0], c[1], c[2]);
}

double triangle_diameter(const Mesh& mesh, int t) {
    auto c = mesh.corners(t);
    return std::max({distance(c[0], c[1]), distance(c[1], c[2]), distance(c[2], c[0])});
}

double min_angle_deg(const Mesh& mesh) {
    double worst = 180.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        auto c = mesh.corners(t);
        for (int i = 0; i < 3; ++i) {
            Vec2 u = c[(i + 1) % 3] - c[i];
            Vec2 w = c[(i + 2) % 3] - c[i];
            double cosv = dot(u, w) / (norm(u) * norm(w));
            cosv = std::clamp(cosv, -1.0, 1.0);
            worst = std::min(worst, std::acos(cosv) * 180.0 / std::numbers::pi);
        }
    }
    return worst;
}

void validate_mesh(const Mesh& mesh) {
    if (mesh.vertex_on_boundary.size() != mesh.vertices.size())
        throw std::invalid_argument("boundary flag array has wrong size");
    check_vertex_indices(
        [&] {
            std::vector<std::array<int, 3>> vs(mesh.triangles.size());
            for (std::size_t t = 0; t < mesh.triangles.size(); ++t) vs[t] = mesh.triangles[t].v;
            return vs;
        }(),
        mesh.num_vertices());
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        if (!(triangle_area(mesh, t) > 0.0))
            throw std::invalid_argument("triangle " + std::to_string(t) +
                                        " is not counterclockwise");
        if (mesh.triangles[t].refinement_edge < 0 || mesh.triangles[t].refinement_edge > 2)
            throw std::invalid_argument("triangle " + std::to_string(t) +
                                        " has an invalid refinement edge");
    }
    auto inc = edge_incidence(mesh);
    auto flags = boundary_flags_checked(mesh, inc);
    if (flags != mesh.vertex_on_boundary)
        throw std::invalid_argument("vertex boundary flags do not match edge incidence");
}

Mesh bisect(const Mesh& mesh, const std::vector<int>& marked) {
    for (int t : marked)
        if (t < 0 || t >= mesh.num_triangles())
            throw std::invalid_argument("marked element " + std::to_string(t) + " out of range");
    if (marked.empty()) return mesh;

    // Edge ids in first-encounter order over triangles.
    std::map<EdgeKey, int> edge_id;
    std::vector<EdgeKey> edge_of;
    std::vector<std::array<int, 3>> tri_edges(mesh.triangles.size());
    std::vector<int> incidence_count;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& v = mesh.triangles[t].v;
        for (int l = 0; l < 3; ++l) {
            EdgeKey k = edge_key(v[(l + 1) % 3], v[(l + 2) % 3]);
            auto [it, inserted] = edge_id.try_emplace(k, static_cast<int>(edge_of.size()));
            if (inserted) {
                edge_of.push_back(k);
                incidence_count.push_back(0);
            }
            tri_edges[t][l] = it->second;
            ++incidence_count[it->second];
        }
    }
    const int ne = static_cast<int>(edge_of.size());

    std::vector<std::uint8_t> edge_marked(ne, 0);
    for (int t : marked) edge_marked[tri_edges[t][mesh.triangles[t].refinement_edge]] = 1;

    // Conforming closure: whenever any edge of a triangle is marked, its
    // refinement edge must be marked as well.
    bool changed = true;
    int rounds = 0;
    while (changed) {
        if (++rounds > ne + 2) throw std::runtime_error("refinement closure did not terminate");
        changed = false;
        for (int t = 0; t < mesh.num_triangles(); ++t) {
            const auto& te = tri_edges[t];
            if (!(edge_marked[te[0]] || edge_marked[te[1]] || edge_marked[te[2]])) continue;
            int ref = te[mesh.triangles[t].refinement_edge];
            if (!edge_marked[ref]) {
                edge_marked[ref] = 1;
                changed = true;
            }
        }
    }

    std::vector<Vec2> coords = mesh.vertices;
    std::vector<std::uint8_t> flags = mesh.vertex_on_boundary;
    std::vector<int> midpoint(ne, -1);
    for (int e = 0; e < ne; ++e) {
        if (!edge_marked[e]) continue;
        Vec2 m = (coords[edge_of[e].first] + coords[edge_of[e].second]) * 0.5;
        bool on_boundary = incidence_count[e] == 1;
        if (on_boundary && mesh.geometry == GeometryTag::UnitCircle) m = m / norm(m);
        midpoint[e] = static_cast<int>(coords.size());
        coords.push_back(m);
        flags.push_back(on_boundary ? 1 : 0);
    }

    std::vector<Triangle> out;
    out.reserve(mesh.triangles.size() + 3 * marked.size());
    auto emit = [&](auto&& self, std::array<int, 3> v, int ref, int depth) -> void {
        if (depth > 2) throw std::logic_error("bisection recursion exceeded depth 2");
        int a = v[(ref + 1) % 3];
        int b = v[(ref + 2) % 3];
        int c = v[ref];
        auto it = edge_id.find(edge_key(a, b));
        int eid = it == edge_id.end() ? -1 : it->second;
        if (eid < 0 || !edge_marked[eid]) {
            out.push_back({v, ref});
            return;
        }
        int m = midpoint[eid];
        self(self, {a, m, c}, 1, depth + 1);
        self(self, {m, b, c}, 0, depth + 1);
    };
    for (int t = 0; t < mesh.num_triangles(); ++t)
        emit(emit, mesh.triangles[t].v, mesh.triangles[t].refinement_edge, 0);

    Mesh refined = assemble_mesh(std::move(coords), std::move(out), mesh.geometry);
    if (refined.vertex_on_boundary != flags)
        throw std::logic_error("bisection produced inconsistent boundary flags");
    for (int t = 0; t < refined.num_triangles(); ++t)
        if (!(triangle_area(refined, t) > 0.0))
            throw std::logic_error("bisection produced a non-counterclockwise triangle");
    return refined;
}

void write_mesh(const Mesh& mesh, const std::string& path) {
    std::string text;
    text += std::to_string(mesh.num_vertices()) + " " + std::to_string(mesh.num_triangles()) + "\n";
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        text += format_double17(mesh.vertices[v].x) + " " + format_double17(mesh.vertices[v].y) +
                " " + std::to_string(static_cast<int>(mesh.vertex_on_boundary[v])) + "\n";
    }
    for (const auto& t : mesh.triangles) {
        text += std::to_string(t.v[0]) + " " + std::to_string(t.v[1]) + " " +
                std::to_string(t.v[2]) + "\n";
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("failed to write " + path);
}

namespace {

class TokenReader {
  public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    std::string next() {
        std::string tok;
        if (!(in_ >> tok)) throw std::invalid_argument("unexpected end of mesh file");
        return tok;
    }

    int next_int() {
        std::string tok = next();
        int v = 0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("invalid integer '" + tok + "' in mesh file");
        return v;
    }

    double next_double() {
        std::string tok = next();
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw std::invalid_argument("invalid number '" + tok + "' in mesh file");
        return v;
    }

  private:
    std::istream& in_;
};

}  // namespace

Mesh read_mesh(const std::string& path, GeometryTag geometry) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open mesh file " + path);
    TokenReader tok(in);
    int nv = tok.next_int();
    int nt = tok.next_int();
    if (nv <= 0 || nt <= 0) throw std::invalid_argument("mesh file " + path + " has empty counts");
    std::vector<Vec2> coords(nv);
    std::vector<std::uint8_t> flags(nv);
    for (int v = 0; v < nv; ++v) {
        coords[v].x = tok.next_double();
        coords[v].y = tok.next_double();
        int f = tok.next_int();
        if (f != 0 && f != 1)
            throw std::invalid_argument("boundary flag must be 0 or 1 in " + path);
        flags[v] = static_cast<std::uint8_t>(f);
    }
    std::vector<std::array<int, 3>> tris(nt);
    for (int t = 0; t < nt; ++t)
        tris[t] = {tok.next_int(), tok.next_int(), tok.next_int()};
    Mesh mesh = build_mesh(std::move(coords), std::move(tris), geometry);
    if (mesh.vertex_on_boundary != flags)
        throw std::invalid_argument("boundary flags in " + path + " do not match edge incidence");
    return mesh;
}

}  // namespace oafem
