#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "chowbench/quotient.hpp"

namespace chowbench {

/// Ingestion format: vertices (and nu) as exact rational/integer strings.
struct PolytopeDocument {
    std::string schema_version = "1";
    std::string name;  // empty = absent
    int ambient_dim = 0;
    std::vector<RatVec> vertices;
    std::optional<IntVec> nu;
};

/// Parses and validates a document; throws std::invalid_argument with a
/// located message on malformed JSON or schema violations.
PolytopeDocument parse_polytope_document(const std::string& text);

nlohmann::json document_json(const PolytopeDocument& doc);
std::string document_to_string(const PolytopeDocument& doc);

/// Hull of the document's vertices in the ambient lattice.
LatticePolytope document_polytope(const PolytopeDocument& doc);

nlohmann::json polytope_json(const LatticePolytope& P, bool include_facets = false);
nlohmann::json analysis_json(const ActionAnalysis& a);
nlohmann::json diagram_json(const QuotientDiagram& D, bool emit_polytopes = false);
nlohmann::json canonical_form_json(const CanonicalForm& c, bool emit_polytope);

/// Canonical dump: 2-space indent, sorted keys, trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace chowbench
