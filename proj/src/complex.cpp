#include "sbrw/complex.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace sbrw {

namespace {

// All nonempty subsets of a sorted vertex set.
void collect_subsets(const std::vector<VertexId>& verts,
                     std::set<std::vector<VertexId>>& out) {
    const size_t n = verts.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<VertexId> s;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(verts[i]);
        out.insert(std::move(s));
    }
}

int position_in(const std::vector<VertexId>& sorted, VertexId v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    return static_cast<int>(it - sorted.begin());
}

}  // namespace

SimplicialComplex SimplicialComplex::from_maximal_faces(
    const std::vector<std::vector<VertexId>>& faces) {
    if (faces.empty()) throw std::invalid_argument("complex needs at least one maximal face");
    std::set<std::vector<VertexId>> all;
    for (auto f : faces) {
        if (f.empty()) throw std::invalid_argument("empty maximal face");
        sort_with_parity(f);  // throws on duplicate vertex
        collect_subsets(f, all);
    }

    SimplicialComplex X;
    X.d_ = 0;
    for (const auto& c : all) X.d_ = std::max(X.d_, static_cast<int>(c.size()) - 1);
    X.cells_.resize(X.d_ + 1);
    X.index_.resize(X.d_ + 1);
    for (const auto& c : all) X.cells_[c.size() - 1].push_back(Cell(c));
    // std::set iteration is lexicographic per dimension already, but cells of
    // different sizes interleave; re-sort each dimension to be explicit.
    for (auto& v : X.cells_) std::sort(v.begin(), v.end());
    for (int j = 0; j <= X.d_; ++j)
        for (size_t i = 0; i < X.cells_[j].size(); ++i)
            X.index_[j][X.cells_[j][i].verts] = static_cast<int>(i);

    X.faces_.resize(X.d_ + 1);
    X.cofaces_.resize(X.d_ + 1);
    for (int j = 0; j <= X.d_; ++j) {
        X.faces_[j].resize(X.cells_[j].size());
        X.cofaces_[j].resize(X.cells_[j].size());
    }
    for (int j = 1; j <= X.d_; ++j) {
        for (size_t i = 0; i < X.cells_[j].size(); ++i) {
            const auto& verts = X.cells_[j][i].verts;
            auto& fl = X.faces_[j][i];
            fl.reserve(verts.size());
            for (size_t drop = 0; drop < verts.size(); ++drop) {
                std::vector<VertexId> f;
                f.reserve(verts.size() - 1);
                for (size_t t = 0; t < verts.size(); ++t)
                    if (t != drop) f.push_back(verts[t]);
                int fi = X.index_[j - 1].at(f);
                fl.push_back(fi);
                X.cofaces_[j - 1][fi].push_back(static_cast<int>(i));
            }
        }
    }
    for (int j = 0; j < X.d_; ++j)
        for (auto& cf : X.cofaces_[j]) std::sort(cf.begin(), cf.end());
    return X;
}

int SimplicialComplex::index_of(const Cell& c) const {
    int j = c.dim();
    if (j < 0 || j > d_) return -1;
    auto it = index_[j].find(c.verts);
    return it == index_[j].end() ? -1 : it->second;
}

int SimplicialComplex::deg(const Cell& c) const {
    if (c.dim() == -1) return n_cells(0);
    int i = index_of(c);
    if (i < 0) throw std::invalid_argument("cell not in complex: " + c.str());
    return deg(c.dim(), i);
}

int SimplicialComplex::max_degree(int j) const {
    int m = 0;
    for (int i = 0; i < n_cells(j); ++i) m = std::max(m, deg(j, i));
    return m;
}

std::vector<std::pair<int, int>> SimplicialComplex::neighbors_in_coface(int j, int i,
                                                                        int coface) const {
    const auto& tau = cells_[j + 1][coface].verts;
    const auto& sig = cells_[j][i].verts;
    std::vector<std::pair<int, int>> out;
    out.reserve(j + 1);
    if (j == 0) {
        for (VertexId v : tau)
            if (v != sig[0]) out.emplace_back(index_[0].at({v}), 1);
        return out;
    }
    // u = added vertex, x = dropped vertex; the neighbor through tau obtained
    // by dropping x gets sign -(-1)^{pos(u)+pos(x)} relative to +sigma.
    VertexId u = -1;
    for (VertexId v : tau)
        if (!std::binary_search(sig.begin(), sig.end(), v)) u = v;
    int pu = position_in(tau, u);
    for (VertexId x : sig) {
        std::vector<VertexId> nb;
        nb.reserve(tau.size() - 1);
        for (VertexId v : tau)
            if (v != x) nb.push_back(v);
        int px = position_in(tau, x);
        int s = ((pu + px) % 2 == 0) ? -1 : 1;
        out.emplace_back(index_[j].at(nb), s);
    }
    return out;
}

std::vector<OrientedCell> SimplicialComplex::up_neighbors(const OrientedCell& sigma) const {
    int j = sigma.dim();
    if (j < 0 || j > d_ - 1) throw std::invalid_argument("up_neighbors needs 0 <= dim <= d-1");
    int i = index_of(sigma.cell);
    if (i < 0) throw std::invalid_argument("cell not in complex: " + sigma.cell.str());
    std::vector<OrientedCell> out;
    for (int cf : cofaces_[j][i]) {
        for (auto [nb, s] : neighbors_in_coface(j, i, cf))
            out.emplace_back(cells_[j][nb], j == 0 ? 1 : s * sigma.sign);
    }
    return out;
}

std::vector<std::pair<int, int>> SimplicialComplex::adjacent_through_face(int j, int i,
                                                                          int face_pos) const {
    int fi = faces_[j][i][face_pos];
    // inherited sign of the face from +cell
    int eps = (face_pos % 2 == 0) ? 1 : -1;
    const auto& fverts = cells_[j - 1][fi].verts;
    std::vector<std::pair<int, int>> out;
    for (int c2 : cofaces_[j - 1][fi]) {
        if (c2 == i) continue;
        const auto& overts = cells_[j][c2].verts;
        VertexId y = -1;
        for (VertexId v : overts)
            if (!std::binary_search(fverts.begin(), fverts.end(), v)) y = v;
        int py = position_in(overts, y);
        int inh2 = (py % 2 == 0) ? 1 : -1;  // inherited sign of face from +other
        // orientation s2 of the other cell must satisfy s2 * inh2 = -eps
        out.emplace_back(c2, -eps * inh2);
    }
    return out;
}

std::vector<OrientedCell> SimplicialComplex::down_adjacent(const OrientedCell& tau) const {
    int j = tau.dim();
    if (j < 1 || j > d_) throw std::invalid_argument("down_adjacent needs 1 <= dim <= d");
    int i = index_of(tau.cell);
    if (i < 0) throw std::invalid_argument("cell not in complex: " + tau.cell.str());
    std::vector<OrientedCell> out;
    for (size_t fp = 0; fp < faces_[j][i].size(); ++fp) {
        for (auto [nb, s] : adjacent_through_face(j, i, static_cast<int>(fp)))
            out.emplace_back(cells_[j][nb], s * tau.sign);
    }
    return out;
}

std::vector<std::vector<OrientedCell>> SimplicialComplex::k_components(int k) const {
    if (k < 0 || k > d_ - 1) throw std::invalid_argument("k_components needs 0 <= k <= d-1");
    int m = n_cells(k);
    if (k == 0) {
        // plain graph components on vertices
        std::vector<int> comp(m, -1);
        int nc = 0;
        for (int s = 0; s < m; ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = nc;
            std::queue<int> q;
            q.push(s);
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (int e : cofaces_[0][v])
                    for (int fi : faces_[1][e]) {
                        if (comp[fi] < 0) {
                            comp[fi] = nc;
                            q.push(fi);
                        }
                    }
            }
            ++nc;
        }
        std::vector<std::vector<OrientedCell>> out(nc);
        for (int i = 0; i < m; ++i) out[comp[i]].emplace_back(cells_[0][i], 1);
        return out;
    }
    // oriented cells: slot 2i is +, 2i+1 is -
    std::vector<int> comp(2 * m, -1);
    int nc = 0;
    for (int s = 0; s < 2 * m; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = nc;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int cur = q.front();
            q.pop();
            int ci = cur / 2;
            int csign = (cur % 2 == 0) ? 1 : -1;
            for (int cf : cofaces_[k][ci]) {
                for (auto [nb, sg] : neighbors_in_coface(k, ci, cf)) {
                    int s2 = sg * csign;
                    int slot = 2 * nb + (s2 < 0 ? 1 : 0);
                    if (comp[slot] < 0) {
                        comp[slot] = nc;
                        q.push(slot);
                    }
                }
            }
        }
        ++nc;
    }
    std::vector<std::vector<OrientedCell>> out(nc);
    for (int s = 0; s < 2 * m; ++s)
        out[comp[s]].emplace_back(cells_[k][s / 2], s % 2 == 0 ? 1 : -1);
    return out;
}

int SimplicialComplex::n_k_components(int k) const {
    auto classes = k_components(k);
    if (k == 0) return static_cast<int>(classes.size());
    // merge classes related by a global orientation flip
    std::map<std::set<std::vector<VertexId>>, int> seen;
    int n = 0;
    for (const auto& cls : classes) {
        std::set<std::vector<VertexId>> cellset;
        for (const auto& oc : cls) cellset.insert(oc.cell.verts);
        if (!seen.count(cellset)) {
            seen[cellset] = 1;
            ++n;
        }
    }
    return n;
}

std::vector<bool> SimplicialComplex::disorientation_components(
    int k, std::vector<OrientedCell>* choice) const {
    // Parity constraints: x_t * eps_{t,f} equal for all cofaces t of a k-cell
    // f. Solved by BFS 2-coloring on the coface graph.
    int nt = n_cells(k + 1);
    std::vector<int> color(nt, 0);  // 0 unknown, +1/-1 chosen
    std::vector<bool> comps;

    // inherited sign of face f from +t
    auto eps = [&](int t, int f) {
        const auto& fl = faces_[k + 1][t];
        for (size_t pos = 0; pos < fl.size(); ++pos)
            if (fl[pos] == f) return pos % 2 == 0 ? 1 : -1;
        throw std::logic_error("face not found");
    };

    std::vector<char> visited(nt, 0);
    for (int s = 0; s < nt; ++s) {
        if (visited[s]) continue;
        bool ok = true;
        std::vector<int> members;
        color[s] = 1;
        visited[s] = 1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int t = q.front();
            q.pop();
            members.push_back(t);
            for (int f : faces_[k + 1][t]) {
                for (int t2 : cofaces_[k][f]) {
                    if (t2 == t) continue;
                    int need = color[t] * eps(t, f) * eps(t2, f);
                    if (!visited[t2]) {
                        visited[t2] = 1;
                        color[t2] = need;
                        q.push(t2);
                    } else if (color[t2] != need) {
                        ok = false;
                    }
                }
            }
        }
        comps.push_back(ok);
        if (ok && choice)
            for (int t : members) choice->emplace_back(cells_[k + 1][t], color[t]);
    }
    return comps;
}

std::optional<std::vector<OrientedCell>> SimplicialComplex::find_disorientation(int k) const {
    if (k < 0 || k > d_ - 1) throw std::invalid_argument("find_disorientation needs 0 <= k <= d-1");
    std::vector<OrientedCell> choice;
    auto comps = disorientation_components(k, &choice);
    for (bool ok : comps)
        if (!ok) return std::nullopt;
    return choice;
}

bool SimplicialComplex::has_disorientable_component(int k) const {
    auto comps = disorientation_components(k, nullptr);
    for (bool ok : comps)
        if (ok) return true;
    return false;
}

WeightFunction WeightFunction::uniform(const SimplicialComplex& X) {
    WeightFunction w;
    w.by_dim.resize(X.dim() + 1);
    for (int j = 0; j <= X.dim(); ++j) w.by_dim[j].assign(X.n_cells(j), 1.0);
    return w;
}

WeightFunction WeightFunction::w_up(const SimplicialComplex& X) {
    WeightFunction w = uniform(X);
    int j = X.dim() - 1;
    if (j < 0) return w;
    for (int i = 0; i < X.n_cells(j); ++i) {
        int dg = X.deg(j, i);
        if (dg < 1)
            throw std::invalid_argument("w_up requires deg >= 1 on all (d-1)-cells; " +
                                        X.cell(j, i).str() + " has degree 0");
        w.by_dim[j][i] = dg;
    }
    return w;
}

WeightFunction WeightFunction::w_down(const SimplicialComplex& X) {
    WeightFunction w = uniform(X);
    int d = X.dim();
    for (int i = 0; i < X.n_cells(d); ++i) w.by_dim[d][i] = 1.0 / (d + 1);
    return w;
}

double goodness_sup(const SimplicialComplex& X, const WeightFunction& w, int k) {
    if (k < 0 || k > X.dim()) throw std::invalid_argument("goodness needs 0 <= k <= d");
    double sup = 0.0;
    if (k == 0) {
        double s = 0.0;
        for (int i = 0; i < X.n_cells(0); ++i) s += w.at(0, i);
        return s / w.empty_cell;
    }
    for (int i = 0; i < X.n_cells(k - 1); ++i) {
        double s = 0.0;
        for (int cf : X.cofaces(k - 1, i)) s += w.at(k, cf);
        sup = std::max(sup, s / w.at(k - 1, i));
    }
    return sup;
}

GoodnessReport goodness_bound(const SimplicialComplex& X, const WeightFunction& w, int k) {
    double s = goodness_sup(X, w, k);
    return {std::isfinite(s), true, s};
}

}  // namespace sbrw
