#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "sbrw/complex.hpp"
#include "sbrw/simulate.hpp"

namespace fixtures {

using sbrw::SimplicialComplex;

inline SimplicialComplex single_triangle() {
    return SimplicialComplex::from_maximal_faces({{0, 1, 2}});
}

inline SimplicialComplex hollow_triangle() {
    return SimplicialComplex::from_maximal_faces({{0, 1}, {1, 2}, {0, 2}});
}

inline SimplicialComplex two_triangles() {
    return SimplicialComplex::from_maximal_faces({{0, 1, 2}, {1, 2, 3}});
}

inline SimplicialComplex triangle_fan3() {
    // three triangles through the edge {0,1}: max edge degree 3
    return SimplicialComplex::from_maximal_faces({{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
}

inline SimplicialComplex hollow_tetrahedron() {
    return SimplicialComplex::from_maximal_faces({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

inline SimplicialComplex torus7() {
    // 7-vertex triangulation of the torus: triangles {i,i+1,i+3} and
    // {i,i+2,i+3} mod 7; every edge has degree 2
    std::vector<std::vector<sbrw::VertexId>> faces;
    for (int i = 0; i < 7; ++i) {
        faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
        faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex::from_maximal_faces(faces);
}

inline SimplicialComplex two_disjoint_triangles() {
    return SimplicialComplex::from_maximal_faces({{0, 1, 2}, {3, 4, 5}});
}

inline SimplicialComplex cycle_graph(int n) {
    std::vector<std::vector<sbrw::VertexId>> faces;
    for (int i = 0; i < n; ++i) faces.push_back({i, (i + 1) % n});
    for (auto& f : faces) std::sort(f.begin(), f.end());
    return SimplicialComplex::from_maximal_faces(faces);
}

inline SimplicialComplex path_graph(int n) {
    std::vector<std::vector<sbrw::VertexId>> faces;
    for (int i = 0; i + 1 < n; ++i) faces.push_back({i, i + 1});
    return SimplicialComplex::from_maximal_faces(faces);
}

// Small random pure 2-complexes for property suites (seeded, deterministic).
inline SimplicialComplex random_2complex(uint64_t seed, int n_verts = 6, int n_tris = 5) {
    sbrw::SplitMix64 rng(seed);
    std::set<std::vector<sbrw::VertexId>> tris;
    int guard = 0;
    while (static_cast<int>(tris.size()) < n_tris && ++guard < 200) {
        int a = rng.below(n_verts), b = rng.below(n_verts), c = rng.below(n_verts);
        if (a == b || b == c || a == c) continue;
        std::vector<sbrw::VertexId> t = {a, b, c};
        std::sort(t.begin(), t.end());
        tris.insert(t);
    }
    std::vector<std::vector<sbrw::VertexId>> faces(tris.begin(), tris.end());
    return SimplicialComplex::from_maximal_faces(faces);
}

inline sbrw::OrientedCell oc(std::vector<sbrw::VertexId> order) {
    return sbrw::OrientedCell::from_order(std::move(order));
}

}  // namespace fixtures
