#include "oafem/multiplier.hpp"

#include <cmath>
#include <stdexcept>

namespace oafem {

NodalField compute_sigma_h(const NodalField& u, const std::vector<double>& F,
                           const SparseOperator& K, const Mesh& mesh) {
    const int n = mesh.num_vertices();
    if (u.size() != n || static_cast<int>(F.size()) != n || K.rows() != n || K.cols() != n)
        throw std::invalid_argument("compute_sigma_h: sizes do not match the mesh");
    std::vector<double> ku(n);
    K.apply(u.values, ku);
    std::vector<double> mass = lumped_vertex_mass(mesh);
    NodalField sigma;
    sigma.values.assign(n, 0.0);
    for (int z = 0; z < n; ++z) {
        if (mesh.vertex_on_boundary[z]) continue;
        sigma.values[z] = (F[z] - ku[z]) / mass[z];
    }
    return sigma;
}

ElementClassification classify_elements(const NodalField& u, const NodalField& chi_h,
                                        const Mesh& mesh, const EdgeSet& edges) {
    const int n = mesh.num_vertices();
    if (u.size() != n || chi_h.size() != n)
        throw std::invalid_argument("classify_elements: sizes do not match the mesh");
    double umax = 0.0;
    for (double v : u.values) umax = std::max(umax, std::abs(v));
    const double tol = 1e-10 * (1.0 + umax);

    std::vector<std::uint8_t> in_contact(n, 0);
    for (int z = 0; z < n; ++z)
        if (std::abs(u.values[z] - chi_h.values[z]) <= tol) in_contact[z] = 1;

    ElementClassification cls;
    cls.of_element.resize(mesh.triangles.size());
    std::vector<std::uint8_t> fb_contact_vertex(n, 0);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& v = mesh.triangles[t].v;
        int nc = in_contact[v[0]] + in_contact[v[1]] + in_contact[v[2]];
        if (nc == 3) {
            cls.of_element[t] = ContactClass::FullContact;
            cls.full_contact.push_back(t);
        } else if (nc == 0) {
            cls.of_element[t] = ContactClass::NoContact;
            cls.no_contact.push_back(t);
        } else {
            cls.of_element[t] = ContactClass::FreeBoundary;
            cls.free_boundary.push_back(t);
            for (int i = 0; i < 3; ++i)
                if (in_contact[v[i]]) fb_contact_vertex[v[i]] = 1;
        }
    }
    for (int e = 0; e < static_cast<int>(edges.interior.size()); ++e) {
        const auto& edge = edges.interior[e];
        if (fb_contact_vertex[edge.a] || fb_contact_vertex[edge.b]) cls.fb_edge_ids.push_back(e);
    }
    return cls;
}

}  // namespace oafem
