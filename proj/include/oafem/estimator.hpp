#pragma once

#include <vector>

#include "oafem/mesh.hpp"
#include "oafem/multiplier.hpp"
#include "oafem/problem.hpp"
#include "oafem/space.hpp"

namespace oafem {

// Element residual h_T || f - sigma ||_{L2(T)}.
double eta_f_T(const ScalarField& f, const NodalField& sigma, const Mesh& mesh, int t,
               int degree = 4);

// Edge residual h_e^{1/2} || [grad u . n] ||_{L2(e)} across an interior edge;
// for piecewise linears this is h_e times the absolute normal jump.
double eta_jump_e(const NodalField& u, const Mesh& mesh, const InteriorEdge& e);

// Multiplier smoothness indicator h_T^2 || grad sigma ||_{L2(T)}.
double eta_sigma_T(const NodalField& sigma, const Mesh& mesh, int t);

// Squared boundary data oscillation h_e || (g - g_h)' ||^2_{L2(e)} on one
// boundary edge, with g_h the vertex interpolant and ' the tangential
// derivative (analytic if available, central differences otherwise).
double boundary_osc_g(const ScalarField& g, const Mesh& mesh, const BoundaryEdge& e,
                      int degree = 10);

// Squared obstacle oscillations: the elementwise || grad(chi - chi_h) ||^2_{L2(T)}
// (requires an analytic gradient of chi) and the boundary-edge analogue of
// boundary_osc_g with chi in place of g.
double obstacle_osc_grad_T(const ScalarField& chi, const NodalField& chi_h, const Mesh& mesh,
                           int t, int degree = 5);
double obstacle_osc_edge(const ScalarField& chi, const Mesh& mesh, const BoundaryEdge& e,
                         int degree = 10);

// Contact-related contributions entering the general estimator:
//   pos_part_sq   = || grad (chi - u~)^+ ||^2 over the domain,
//   contact_term  = sum over contact elements of int_T (-sigma)(chi - chi_h)^- dx,
//   fb_jump_sq    = sum over free-boundary edges of h_e^2 [grad(u - chi_h) . n]^2.
// Positive and negative parts are applied pointwise at quadrature nodes.
struct GeneralExtras {
    double pos_part_sq = 0.0;
    double contact_term = 0.0;
    double fb_jump_sq = 0.0;
};

GeneralExtras general_extras(const ProblemData& problem, const NodalField& u,
                             const NodalField& sigma, const Mesh& mesh, const EdgeSet& edges,
                             const ElementClassification& cls, int degree = 5);

// Checks max_T chi <= min_{boundary of T} u* + 1e-12 on every boundary
// triangle, the hypothesis under which the general estimator drops its
// contact terms.
bool check_cor45_hypothesis(const ProblemData& problem, const NodalField& u, const Mesh& mesh,
                            const EdgeSet& edges);

enum class EstimatorMode { Simplified, General };

struct EstimatorBreakdown {
    EstimatorMode mode = EstimatorMode::Simplified;
    double eta_f_sq = 0.0;
    double eta_jump_sq = 0.0;
    double eta_sigma_sq = 0.0;
    double osc_g_sq = 0.0;
    double osc_chi_grad_sq = 0.0;
    double osc_chi_edge_sq = 0.0;
    // general mode only:
    double eta_g_sq = 0.0;
    double pos_part_sq = 0.0;
    double contact_term = 0.0;
    double fb_jump_sq = 0.0;

    double total_sq = 0.0;
    // Per-element squared refinement indicator: element terms plus half of
    // each incident interior edge term plus incident boundary oscillations.
    std::vector<double> marking;

    double total() const;
};

// Aggregates all indicator contributions.  The simplified total combines the
// residual terms with the obstacle and boundary-data oscillations; the
// general total instead uses the boundary-correction term eta_g and the
// contact contributions.  The marking vector is the same in both modes.
EstimatorBreakdown total_estimator(EstimatorMode mode, const ProblemData& problem,
                                   const NodalField& u, const NodalField& sigma, const Mesh& mesh,
                                   const EdgeSet& edges, int area_degree = 4,
                                   int edge_degree = 10);

}  // namespace oafem
