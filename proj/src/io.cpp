#include "chowbench/io.hpp"

#include <stdexcept>

namespace chowbench {

namespace {

using nlohmann::json;

json rat_vec_json(const RatVec& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(format_rational(q));
    return out;
}

json int_vec_json(const IntVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

json int_vecs_json(const std::vector<IntVec>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(int_vec_json(v));
    return out;
}

json faces_json(const std::vector<std::vector<int>>& faces) {
    json out = json::array();
    for (const auto& f : faces) out.push_back(f);
    return out;
}

Rational entry_to_rational(const json& e, const char* what) {
    if (e.is_string()) return parse_rational(e.get<std::string>());
    if (e.is_number_integer()) return Rational(Int(e.get<long long>()));
    throw std::invalid_argument(std::string("document: ") + what +
                                " entries must be integer or rational strings");
}

json fan_json(const Fan& F) {
    json out;
    out["lattice_dim"] = F.lattice_dim();
    out["rays"] = int_vecs_json(F.rays());
    out["maximal_cones"] = faces_json(F.maximal_cones());
    return out;
}

}  // namespace

PolytopeDocument parse_polytope_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("document: top level must be an object");

    PolytopeDocument doc;
    if (j.contains("schema_version")) {
        if (!j["schema_version"].is_string())
            throw std::invalid_argument("document: schema_version must be a string");
        doc.schema_version = j["schema_version"].get<std::string>();
    }
    if (doc.schema_version != "1")
        throw std::invalid_argument("document: unsupported schema_version " + doc.schema_version);
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw std::invalid_argument("document: name must be a string");
        doc.name = j["name"].get<std::string>();
    }
    if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer())
        throw std::invalid_argument("document: ambient_dim (integer) is required");
    doc.ambient_dim = j["ambient_dim"].get<int>();
    if (doc.ambient_dim < 0) throw std::invalid_argument("document: ambient_dim must be >= 0");

    if (!j.contains("vertices") || !j["vertices"].is_array() || j["vertices"].empty())
        throw std::invalid_argument("document: nonempty vertices array is required");
    for (const auto& row : j["vertices"]) {
        if (!row.is_array() || (int)row.size() != doc.ambient_dim)
            throw std::invalid_argument("document: every vertex must have ambient_dim entries");
        RatVec v;
        for (const auto& e : row) v.push_back(entry_to_rational(e, "vertex"));
        doc.vertices.push_back(std::move(v));
    }
    if (j.contains("nu")) {
        if (!j["nu"].is_array() || (int)j["nu"].size() != doc.ambient_dim)
            throw std::invalid_argument("document: nu must have ambient_dim entries");
        IntVec nu;
        for (const auto& e : j["nu"]) {
            Rational q = entry_to_rational(e, "nu");
            if (rat_den(q) != 1) throw std::invalid_argument("document: nu entries must be integers");
            nu.push_back(rat_num(q));
        }
        doc.nu = std::move(nu);
    }
    return doc;
}

nlohmann::json document_json(const PolytopeDocument& doc) {
    json j;
    j["schema_version"] = doc.schema_version;
    if (!doc.name.empty()) j["name"] = doc.name;
    j["ambient_dim"] = doc.ambient_dim;
    json verts = json::array();
    for (const auto& v : doc.vertices) verts.push_back(rat_vec_json(v));
    j["vertices"] = std::move(verts);
    if (doc.nu) j["nu"] = int_vec_json(*doc.nu);
    return j;
}

std::string document_to_string(const PolytopeDocument& doc) { return dump_json(document_json(doc)); }

LatticePolytope document_polytope(const PolytopeDocument& doc) {
    return LatticePolytope::hull(doc.vertices, "ambient");
}

nlohmann::json polytope_json(const LatticePolytope& P, bool include_facets) {
    json j;
    j["ambient_dim"] = P.ambient_dim();
    j["dim"] = P.dim();
    j["lattice_tag"] = P.lattice_tag();
    json verts = json::array();
    for (const auto& v : P.vertices()) verts.push_back(rat_vec_json(v));
    j["vertices"] = std::move(verts);
    j["f_vector"] = P.f_vector();
    if (include_facets) {
        json fs = json::array();
        for (const auto& f : P.facets()) {
            json e;
            e["normal"] = int_vec_json(f.normal);
            e["offset"] = format_rational(f.offset);
            fs.push_back(std::move(e));
        }
        j["facets"] = std::move(fs);
    }
    return j;
}

nlohmann::json analysis_json(const ActionAnalysis& a) {
    json j;
    j["nu"] = int_vec_json(a.nu);
    j["warnings"] = a.warnings;
    json weights = json::array();
    for (const auto& w : a.vertex_weights) weights.push_back(w.str());
    j["vertex_weights"] = std::move(weights);
    j["weight_offset"] = a.weight_offset.str();
    json crit = json::array();
    for (const auto& c : a.critical_values) crit.push_back(c.str());
    j["critical_values"] = std::move(crit);
    j["criticality"] = a.criticality;
    j["bandwidth"] = a.bandwidth.str();
    j["delta_smooth"] = a.delta_smooth;
    j["equalized"] = a.equalized;

    json off = json::array();
    for (const auto& e : a.offending_edges) {
        json o;
        o["v"] = e.v;
        o["w"] = e.w;
        o["pairing"] = e.pairing.str();
        o["isotropy_order"] = e.order.str();
        off.push_back(std::move(o));
    }
    j["offending_edges"] = std::move(off);

    json fixed = json::array();
    for (size_t i = 0; i < a.fixed_faces.size(); ++i) {
        json f;
        f["vertices"] = a.fixed_faces[i].vertices;
        f["weight"] = a.fixed_faces[i].weight.str();
        f["dim"] = a.fixed_faces[i].dim;
        auto bb = [](const BBClosure& b) {
            json o;
            o["faces"] = faces_json(b.faces);
            o["codim"] = b.codim;
            o["nu_count"] = b.nu_count;
            return o;
        };
        f["bb_plus"] = bb(a.bb_plus[i]);
        f["bb_minus"] = bb(a.bb_minus[i]);
        fixed.push_back(std::move(f));
    }
    j["fixed_faces"] = std::move(fixed);
    j["sink"] = a.sink_index;
    j["source"] = a.source_index;

    json flags;
    flags["equalized"] = a.equalized;
    flags["b_type"] = a.b_type;
    flags["bordism"] = a.bordism;
    flags["condition_star"] = a.condition_star;
    flags["theorem_hypothesis"] = a.theorem_hypothesis;
    flags["bordism_identity_ok"] = a.bordism_identity_ok;
    j["flags"] = std::move(flags);
    return j;
}

nlohmann::json canonical_form_json(const CanonicalForm& c, bool emit_polytope) {
    json j;
    j["translation"] = rat_vec_json(c.translation);
    j["scale"] = format_rational(c.scale);
    if (emit_polytope) j["polytope"] = polytope_json(c.polytope);
    j["f_vector"] = c.polytope.f_vector();
    return j;
}

nlohmann::json diagram_json(const QuotientDiagram& D, bool emit_polytopes) {
    json j;
    j["action_analysis"] = analysis_json(D.analysis);
    j["criticality"] = D.grid.r;

    auto centers = centers_report(D);
    auto centers_for = [&](const DiagramEdge& e) -> const EdgeCenters* {
        for (const auto& c : centers)
            if (c.kind == e.kind && c.from_i == e.from_i && c.from_j == e.from_j) return &c;
        return nullptr;
    };

    json nodes = json::array();
    for (const auto& n : D.nodes) {
        json o;
        o["i"] = n.i;
        o["j"] = n.j;
        o["role"] = to_string(n.role);
        o["smooth"] = n.smooth;
        o["offending_cones"] = n.offending_cones;
        o["f_vector"] = n.polytope.f_vector();
        o["has_fan"] = n.fan.has_value();
        if (emit_polytopes) {
            o["polytope"] = polytope_json(n.polytope);
            if (n.fan) o["fan"] = fan_json(*n.fan);
            if (n.fiber) o["fiber"] = canonical_form_json(*n.fiber, true);
            if (n.minkowski) o["minkowski"] = canonical_form_json(*n.minkowski, true);
        }
        nodes.push_back(std::move(o));
    }
    j["nodes"] = std::move(nodes);

    json edges = json::array();
    for (const auto& e : D.edges) {
        json o;
        o["kind"] = std::string(1, e.kind);
        o["from"] = {e.from_i, e.from_j};
        o["to"] = {e.to_i, e.to_j};
        o["classification"] = to_string(e.cls.kind);
        if (!e.cls.detail.empty()) o["detail"] = e.cls.detail;
        if (!e.diagnostic.empty()) o["diagnostic"] = e.diagnostic;
        if (const EdgeCenters* ec = centers_for(e)) {
            json cs = json::array();
            for (const auto& st : ec->strata) {
                json c;
                c["cone"] = int_vecs_json(st.cone);
                c["new_ray"] = int_vec_json(st.new_ray);
                c["codim"] = st.codim;
                c["component"] = st.component;
                cs.push_back(std::move(c));
            }
            o["centers"] = std::move(cs);
            o["components"] = ec->components;
        }
        edges.push_back(std::move(o));
    }
    j["edges"] = std::move(edges);

    json squares = json::array();
    for (const auto& s : D.squares) squares.push_back({{"i", s.i}, {"j", s.j}, {"pass", s.pass}});
    j["squares"] = std::move(squares);
    j["all_squares_pass"] = D.all_squares_pass;

    json cross = json::array();
    for (const auto& c : D.cross_validation)
        cross.push_back({{"i", c.i}, {"j", c.j}, {"pass", c.pass}});
    j["cross_validation"] = std::move(cross);
    j["all_cross_pass"] = D.all_cross_pass;
    return j;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace chowbench
