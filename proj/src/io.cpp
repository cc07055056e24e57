#include "sbrw/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sbrw {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

SimplicialComplex complex_from_json_text(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("maximal_faces") || !j["maximal_faces"].is_array())
        throw std::invalid_argument("complex JSON needs a \"maximal_faces\" array");
    std::vector<std::vector<VertexId>> faces;
    for (const auto& f : j["maximal_faces"]) {
        if (!f.is_array()) throw std::invalid_argument("each maximal face must be an id array");
        faces.push_back(f.get<std::vector<VertexId>>());
    }
    return SimplicialComplex::from_maximal_faces(faces);
}

SimplicialComplex load_complex(const std::string& path) {
    return complex_from_json_text(read_file(path));
}

std::string complex_to_json_text(const SimplicialComplex& X) {
    // canonical re-serialization: the maximal cells (no proper coface), sorted
    json faces = json::array();
    for (int j = X.dim(); j >= 0; --j)
        for (int i = 0; i < X.n_cells(j); ++i)
            if (X.deg(j, i) == 0) faces.push_back(X.cell(j, i).verts);
    std::sort(faces.begin(), faces.end());
    json out;
    out["maximal_faces"] = faces;
    return out.dump();
}

BoundaryData boundary_from_json_text(const std::string& text) {
    json j = json::parse(text);
    BoundaryData bd;
    if (!j.contains("A") || !j["A"].is_array())
        throw std::invalid_argument("boundary JSON needs an \"A\" array of cells");
    for (const auto& c : j["A"]) {
        auto verts = c.get<std::vector<VertexId>>();
        sort_with_parity(verts);
        bd.A.push_back(Cell(verts));
    }
    if (j.contains("f")) {
        for (const auto& e : j["f"]) {
            auto verts = e.at("cell").get<std::vector<VertexId>>();
            int sign = e.value("sign", 1);
            double val = e.at("value").get<double>();
            OrientedCell oc = OrientedCell::from_order(verts);
            if (sign < 0) oc = oc.flipped();
            bd.f.emplace_back(oc, val);
        }
    }
    return bd;
}

BoundaryData load_boundary(const std::string& path) {
    return boundary_from_json_text(read_file(path));
}

OrientedCell parse_oriented_cell(const std::string& spec) {
    std::vector<VertexId> verts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        verts.push_back(std::stoi(tok));
    }
    if (verts.empty()) throw std::invalid_argument("empty cell spec: " + spec);
    return OrientedCell::from_order(verts);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string cell_json(const Cell& c) {
    return json(c.verts).dump();
}

uint64_t digest64(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace sbrw
