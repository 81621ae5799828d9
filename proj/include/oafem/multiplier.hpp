#pragma once

#include <cstdint>
#include <vector>

#include "oafem/assembly.hpp"
#include "oafem/space.hpp"

namespace oafem {

// Discrete Lagrange multiplier obtained by mass lumping:
//   sigma_h(z) = (F_z - (K u)_z) / m_z at interior vertices, 0 on the boundary,
// where m_z is the lumped vertex mass.  For the solved obstacle problem
// sigma_h <= 0, and sigma_h = 0 wherever u stays above the obstacle.
NodalField compute_sigma_h(const NodalField& u, const std::vector<double>& F,
                           const SparseOperator& K, const Mesh& mesh);

enum class ContactClass : std::uint8_t {
    NoContact,      // u > chi at all three vertices
    FreeBoundary,   // contact at some vertices but not all
    FullContact,    // u = chi at all three vertices
};

struct ElementClassification {
    std::vector<ContactClass> of_element;
    std::vector<int> no_contact;
    std::vector<int> free_boundary;
    std::vector<int> full_contact;
    // Interior edges incident to a contact vertex of some free-boundary
    // element (indices into EdgeSet::interior).
    std::vector<int> fb_edge_ids;
};

// Classifies elements by vertexwise contact, u(z) = chi_h(z) up to the
// tolerance 1e-10 * (1 + max |u|).  The classification is invariant under
// adding a common constant to u and chi_h.
ElementClassification classify_elements(const NodalField& u, const NodalField& chi_h,
                                        const Mesh& mesh, const EdgeSet& edges);

}  // namespace oafem
