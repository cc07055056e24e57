#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sbrw {

using VertexId = int;

// An unoriented cell: a strictly increasing vertex list. The empty list is
// the (-1)-dimensional cell.
struct Cell {
    std::vector<VertexId> verts;

    Cell() = default;
    explicit Cell(std::vector<VertexId> v) : verts(std::move(v)) {}

    int dim() const { return static_cast<int>(verts.size()) - 1; }
    bool operator==(const Cell& o) const { return verts == o.verts; }
    bool operator<(const Cell& o) const { return verts < o.verts; }

    bool contains(VertexId v) const {
        return std::binary_search(verts.begin(), verts.end(), v);
    }

    std::string str() const {
        std::string s = "[";
        for (size_t i = 0; i < verts.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(verts[i]);
        }
        return s + "]";
    }
};

// Sorts a vertex list in place and returns the permutation parity (+1 even,
// -1 odd). Throws on repeated vertices.
inline int sort_with_parity(std::vector<VertexId>& v) {
    int sign = 1;
    // insertion sort; cells are tiny
    for (size_t i = 1; i < v.size(); ++i) {
        VertexId x = v[i];
        size_t j = i;
        while (j > 0 && v[j - 1] > x) {
            v[j] = v[j - 1];
            --j;
            sign = -sign;
        }
        v[j] = x;
    }
    for (size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) throw std::invalid_argument("repeated vertex in cell");
    return sign;
}

// A cell together with a sign relative to the sorted vertex order. For
// dim >= 1 the sign is the orientation; for dim <= 0 cells carry no genuine
// orientation and the sign only ever appears as an incidence coefficient.
struct OrientedCell {
    Cell cell;
    int sign = 1;

    OrientedCell() = default;
    OrientedCell(Cell c, int s) : cell(std::move(c)), sign(s) {}

    // Builds from an arbitrary vertex ordering; the sign is the parity of the
    // sorting permutation.
    static OrientedCell from_order(std::vector<VertexId> order) {
        int s = sort_with_parity(order);
        return OrientedCell(Cell(std::move(order)), s);
    }

    int dim() const { return cell.dim(); }

    OrientedCell flipped() const { return OrientedCell(cell, -sign); }

    bool operator==(const OrientedCell& o) const {
        return cell == o.cell && sign == o.sign;
    }
    bool operator<(const OrientedCell& o) const {
        if (cell.verts != o.cell.verts) return cell < o.cell;
        return sign > o.sign;  // +1 before -1
    }

    std::string str() const { return (sign < 0 ? "-" : "") + cell.str(); }
};

// Faces of an oriented j-cell (j >= 1) with their induced orientations:
// dropping the i-th vertex carries the sign (-1)^i.
inline std::vector<OrientedCell> induced_face_orientations(const OrientedCell& oc) {
    if (oc.dim() < 1) throw std::invalid_argument("induced_face_orientations needs dim >= 1");
    std::vector<OrientedCell> out;
    out.reserve(oc.cell.verts.size());
    int s = oc.sign;
    for (size_t i = 0; i < oc.cell.verts.size(); ++i) {
        std::vector<VertexId> f;
        f.reserve(oc.cell.verts.size() - 1);
        for (size_t j = 0; j < oc.cell.verts.size(); ++j)
            if (j != i) f.push_back(oc.cell.verts[j]);
        out.emplace_back(Cell(std::move(f)), (i % 2 == 0) ? s : -s);
    }
    return out;
}

}  // namespace sbrw
