#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sbrw/cell.hpp"

namespace sbrw {

struct VecHash {
    size_t operator()(const std::vector<VertexId>& v) const {
        size_t h = 1469598103934665603ull;
        for (VertexId x : v) {
            h ^= static_cast<size_t>(static_cast<uint32_t>(x)) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// A finite simplicial complex with precomputed face/coface indices. Immutable
// after construction; cells of each dimension are indexed in lexicographic
// order of their vertex lists, which fixes the basis of every operator.
//
// The empty cell (dimension -1) is materialized implicitly: Omega^{-1} is R
// and the weight of the empty cell is part of WeightFunction.
class SimplicialComplex {
  public:
    // Downward closure of the given maximal faces. Duplicated vertices inside
    // a face are rejected.
    static SimplicialComplex from_maximal_faces(const std::vector<std::vector<VertexId>>& faces);

    int dim() const { return d_; }

    // Number of j-cells; j = -1 returns 1 (the empty cell).
    int n_cells(int j) const {
        if (j == -1) return 1;
        if (j < -1 || j > d_) return 0;
        return static_cast<int>(cells_[j].size());
    }
    const std::vector<Cell>& cells(int j) const { return cells_[j]; }
    const Cell& cell(int j, int i) const { return cells_[j][i]; }

    // Index of a cell in its dimension, or -1 when absent.
    int index_of(const Cell& c) const;
    bool has_cell(const Cell& c) const { return c.dim() == -1 || index_of(c) >= 0; }

    // Face indices of cell (j,i), ordered by dropped-vertex position. For
    // j = 0 the unique face is the empty cell, represented by the empty list.
    const std::vector<int>& faces(int j, int i) const { return faces_[j][i]; }
    // Coface indices of cell (j,i) in dimension j+1 (sorted).
    const std::vector<int>& cofaces(int j, int i) const { return cofaces_[j][i]; }
    int deg(int j, int i) const { return static_cast<int>(cofaces_[j][i].size()); }
    int deg(const Cell& c) const;

    int max_degree(int j) const;

    // --- neighbor / adjacency relations -----------------------------------

    // Up-neighbors (Def. of the neighboring relation): oriented j-cells
    // sharing a coface with sigma and inducing the opposite orientation on
    // it. For j = 0 this is plain graph adjacency. |result| = (j+1)*deg.
    std::vector<OrientedCell> up_neighbors(const OrientedCell& sigma) const;

    // Up-neighbors of the positively oriented cell (j,i) inside one coface,
    // as (cell index, sign) pairs. This is the splitting target set of the
    // branching walk.
    std::vector<std::pair<int, int>> neighbors_in_coface(int j, int i, int coface) const;

    // Down-adjacency: oriented j-cells (j >= 1) sharing a face that inherits
    // opposite orientations from the two cells.
    std::vector<OrientedCell> down_adjacent(const OrientedCell& tau) const;
    // Same, for the positive orientation of (j,i) through its face at
    // position `face_pos`, as (cell index, sign) pairs.
    std::vector<std::pair<int, int>> adjacent_through_face(int j, int i, int face_pos) const;

    // --- connectivity and disorientability --------------------------------

    // Chain-equivalence classes of oriented k-cells (vertices for k = 0).
    std::vector<std::vector<OrientedCell>> k_components(int k) const;
    // Number of classes modulo orientation flip.
    int n_k_components(int k) const;
    bool is_k_connected(int k) const { return n_k_components(k) == 1; }

    // A choice of orientations of the (k+1)-cells such that any two meeting
    // in a k-cell induce the same orientation on it, or nullopt.
    std::optional<std::vector<OrientedCell>> find_disorientation(int k) const;
    // True when some component of the (k+1)-cell adjacency graph (components
    // with at least one (k+1)-cell) admits such a choice.
    bool has_disorientable_component(int k) const;

  private:
    int d_ = 0;
    std::vector<std::vector<Cell>> cells_;                   // by dim 0..d
    std::vector<std::unordered_map<std::vector<VertexId>, int, VecHash>> index_;  // by dim
    std::vector<std::vector<std::vector<int>>> faces_;       // [j][i] -> face ids
    std::vector<std::vector<std::vector<int>>> cofaces_;     // [j][i] -> coface ids

    // Per-component disorientation solve over the (k+1)-cell adjacency graph;
    // each entry tells whether that component's parity constraints are
    // satisfiable.
    std::vector<bool> disorientation_components(int k, std::vector<OrientedCell>* choice) const;
};

// Strictly positive weights on all cells, including the empty cell.
struct WeightFunction {
    double empty_cell = 1.0;
    std::vector<std::vector<double>> by_dim;  // [j][i]

    double at(int j, int i) const { return j == -1 ? empty_cell : by_dim[j][i]; }

    static WeightFunction uniform(const SimplicialComplex& X);
    // w_up: deg on (d-1)-cells, 1 elsewhere. Requires deg >= 1 there.
    static WeightFunction w_up(const SimplicialComplex& X);
    // w_down: 1/(d+1) on d-cells, 1 elsewhere.
    static WeightFunction w_down(const SimplicialComplex& X);
};

// sup over (k-1)-cells of (1/w) * sum of coface weights (Def. of k-goodness).
double goodness_sup(const SimplicialComplex& X, const WeightFunction& w, int k);

struct GoodnessReport {
    bool bounded_coboundary;
    bool welldefined_boundary;
    double sup;
};
// On a finite complex both predicates always hold; the sup is still reported.
GoodnessReport goodness_bound(const SimplicialComplex& X, const WeightFunction& w, int k);

inline std::pair<bool, double> is_k_good(const SimplicialComplex& X, const WeightFunction& w,
                                         int k) {
    double s = goodness_sup(X, w, k);
    return {std::isfinite(s), s};
}

}  // namespace sbrw
