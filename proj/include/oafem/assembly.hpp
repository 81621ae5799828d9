#pragma once

#include <array>
#include <vector>

#include "oafem/mesh.hpp"
#include "oafem/quadrature.hpp"
#include "oafem/space.hpp"

namespace oafem {

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

// Compressed sparse row matrix.  Duplicate triplets are summed in a fixed
// order, so assembly is reproducible bit for bit.
class SparseOperator {
  public:
    SparseOperator() = default;
    static SparseOperator from_triplets(int rows, int cols, const std::vector<Triplet>& triplets);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    // y = A x
    void apply(const std::vector<double>& x, std::vector<double>& y) const;

    double entry(int row, int col) const;
    std::vector<double> diagonal() const;
    double row_sum(int row) const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<double> val_;
};

// Local stiffness matrix of the Laplacian on triangle (a, b, c):
// K_ij = |T| grad(lambda_i) . grad(lambda_j), evaluated in closed form.
std::array<std::array<double, 3>, 3> element_stiffness(Vec2 a, Vec2 b, Vec2 c);

// Global P1 stiffness matrix of -Laplace, no boundary conditions applied.
SparseOperator assemble_stiffness(const Mesh& mesh);

// Load vector F_z = int_Omega f psi_z dx by elementwise quadrature.
std::vector<double> assemble_load(const ScalarField& f, const Mesh& mesh, int degree = 4);

}  // namespace oafem
