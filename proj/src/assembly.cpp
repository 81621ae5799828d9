#include "oafem/assembly.hpp"

#include <algorithm>
#include <stdexcept>

#include "oafem/parallel.hpp"

namespace oafem {

SparseOperator SparseOperator::from_triplets(int rows, int cols,
                                             const std::vector<Triplet>& triplets) {
    for (const auto& t : triplets)
        if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
            throw std::invalid_argument("triplet index out of range");
    std::vector<int> order(triplets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        if (triplets[i].row != triplets[j].row) return triplets[i].row < triplets[j].row;
        return triplets[i].col < triplets[j].col;
    });
    SparseOperator op;
    op.rows_ = rows;
    op.cols_ = cols;
    op.row_ptr_.assign(rows + 1, 0);
    for (std::size_t i = 0; i < order.size();) {
        const Triplet& head = triplets[order[i]];
        double sum = 0.0;
        std::size_t j = i;
        while (j < order.size() && triplets[order[j]].row == head.row &&
               triplets[order[j]].col == head.col) {
            sum += triplets[order[j]].value;
            ++j;
        }
        op.col_.push_back(head.col);
        op.val_.push_back(sum);
        ++op.row_ptr_[head.row + 1];
        i = j;
    }
    for (int r = 0; r < rows; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
    return op;
}

void SparseOperator::apply(const std::vector<double>& x, std::vector<double>& y) const {
    if (static_cast<int>(x.size()) != cols_)
        throw std::invalid_argument("apply: vector length does not match matrix columns");
    y.assign(rows_, 0.0);
    for (int r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += val_[k] * x[col_[k]];
        y[r] = s;
    }
}

double SparseOperator::entry(int row, int col) const {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
        throw std::invalid_argument("entry: index out of range");
    for (int k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
        if (col_[k] == col) return val_[k];
    return 0.0;
}

std::vector<double> SparseOperator::diagonal() const {
    std::vector<double> d(rows_, 0.0);
    for (int r = 0; r < rows_ && r < cols_; ++r) d[r] = entry(r, r);
    return d;
}

double SparseOperator::row_sum(int row) const {
    if (row < 0 || row >= rows_)
        throw std::invalid_argument("row_sum: index out of range");
    double s = 0.0;
    for (int k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k) s += val_[k];
    return s;
}

std::array<std::array<double, 3>, 3> element_stiffness(Vec2 a, Vec2 b, Vec2 c) {
    double a2 = signed_area2(a, b, c);
    if (!(a2 > 0.0)) throw std::invalid_argument("element_stiffness: degenerate or clockwise triangle");
    std::array<Vec2, 3> p{a, b, c};
    std::array<Vec2, 3> g;
    for (int i = 0; i < 3; ++i) g[i] = perp(p[(i + 2) % 3] - p[(i + 1) % 3]) / a2;
    double area = 0.5 * a2;
    std::array<std::array<double, 3>, 3> k{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k[i][j] = area * dot(g[i], g[j]);
    return k;
}

SparseOperator assemble_stiffness(const Mesh& mesh) {
    const std::size_t nt = mesh.triangles.size();
    std::vector<Triplet> triplets(9 * nt);
    parallel_chunks(nt, [&](std::size_t tb, std::size_t te) {
        for (std::size_t t = tb; t < te; ++t) {
            auto c = mesh.corners(static_cast<int>(t));
            auto k = element_stiffness(c[0], c[1], c[2]);
            const auto& v = mesh.triangles[t].v;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    triplets[9 * t + 3 * i + j] = {v[i], v[j], k[i][j]};
        }
    });
    return SparseOperator::from_triplets(mesh.num_vertices(), mesh.num_vertices(), triplets);
}

std::vector<double> assemble_load(const ScalarField& f, const Mesh& mesh, int degree) {
    if (!f.value) throw std::invalid_argument("assemble_load: field has no value callback");
    auto rule = quadrature_rule(degree);
    const std::size_t nt = mesh.triangles.size();
    std::vector<std::array<double, 3>> local(nt);
    parallel_chunks(nt, [&](std::size_t tb, std::size_t te) {
        for (std::size_t t = tb; t < te; ++t) {
            auto c = mesh.corners(static_cast<int>(t));
            double area = oafem::triangle_area(c[0], c[1], c[2]);
            std::array<double, 3> acc{0.0, 0.0, 0.0};
            for (const auto& q : rule.points) {
                Vec2 p = q.b0 * c[0] + q.b1 * c[1] + q.b2 * c[2];
                double fw = area * q.w * f.value(p);
                acc[0] += fw * q.b0;
                acc[1] += fw * q.b1;
                acc[2] += fw * q.b2;
            }
            local[t] = acc;
        }
    });
    std::vector<double> load(mesh.vertices.size(), 0.0);
    for (std::size_t t = 0; t < nt; ++t)
        for (int i = 0; i < 3; ++i) load[mesh.triangles[t].v[i]] += local[t][i];
    return load;
}

}  // namespace oafem
