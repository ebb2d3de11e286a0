#pragma once
#include <json.hpp>

#include <string>

#include "mpx/chain_maps.hpp"
#include "mpx/cocycle.hpp"
#include "mpx/odometer.hpp"

namespace mpx {

/* Ordered JSON keeps insertion order, so emitted documents are byte-stable. */
using Json = nlohmann::ordered_json;

/* Reads and parses a file; throws Error("ParseError") with the parser's
 * location message on malformed input, Error("IoError") if unreadable. */
Json load_json_file(const std::string& path);

/* Parsers check the documented schemas (Error "SchemaError" on structural
 * problems) and then validate through the module constructors, so semantic
 * errors surface with the module's own codes and witnesses. */
FiniteCategory category_from_json(const Json& j);
Json category_to_json(const FiniteCategory& C);

MatchedPair matched_pair_from_json(const Json& j);
Json matched_pair_to_json(const MatchedPair& mp);

WeightedGraph weighted_graph_from_json(const Json& j);
Json weighted_graph_to_json(const WeightedGraph& g);

/* Sparse matrix as { "rows", "cols", "entries": [[i, j, "v"]] } with
 * decimal-string values (numeric literals accepted on input). */
IntMatrix matrix_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);

Json group_to_json(const AbelianGroup& g);
Json homology_report_json(int degree, const AbelianGroup& g);

/* Bases as label lists, boundaries in the sparse-matrix schema. */
Json chain_complex_to_json(const ChainComplex& cx);

/* Phases as (reduced) fraction strings "a/b" or "a". */
Phase phase_from_string(const std::string& s);

/* 2-cochain entries as [f, g, "a/b"] with morphism ids from A and B (the two
 * factors differ only for phi_11). */
Cochain2 cochain2_from_json(const FiniteCategory& A, const FiniteCategory& B,
                            const Json& entries);
Json cochain2_to_json(const FiniteCategory& A, const FiniteCategory& B,
                      const Cochain2& c);

Cochain1 cochain1_from_json(const FiniteCategory& C, const Json& entries);
Json cochain1_to_json(const FiniteCategory& C, const Cochain1& b);

/* { "phi_20": [...], "phi_11": [...], "phi_02": [...] }. */
TotalCocycle total_cocycle_from_json(const MatchedPair& mp, const Json& j);
Json total_cocycle_to_json(const MatchedPair& mp, const TotalCocycle& phi);

} // namespace mpx
