#include "mpx/json_io.hpp"

#include <fstream>

namespace mpx {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error("SchemaError", std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string())
        throw Error("SchemaError", std::string("field \"") + key +
                                       "\" must be a string");
    return v.get<std::string>();
}

mpz_class mpz_from_json(const Json& v, const char* what) {
    if (v.is_string()) {
        try {
            return mpz_class(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw Error("SchemaError", std::string(what) +
                                           ": malformed integer string \"" +
                                           v.get<std::string>() + "\"");
        }
    }
    if (v.is_number_integer()) return mpz_class(v.get<long>());
    throw Error("SchemaError",
                std::string(what) + ": expected an integer or decimal string");
}

Json mpz_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

/* Action tables as [c, d, result] triples of morphism ids. */
std::vector<int> action_table_from_json(const FiniteCategory& C,
                                        const FiniteCategory& D,
                                        const FiniteCategory& result_in,
                                        const Json& entries, const char* key) {
    if (!entries.is_array())
        throw Error("SchemaError", std::string(key) + " must be an array");
    std::vector<int> table(
        static_cast<size_t>(C.num_morphisms()) * D.num_morphisms(), -1);
    for (const Json& e : entries) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() ||
            !e[1].is_string() || !e[2].is_string())
            throw Error("SchemaError",
                        std::string(key) + " entries must be [c, d, result]");
        int c = C.morphism_index(e[0].get<std::string>());
        int d = D.morphism_index(e[1].get<std::string>());
        int r = result_in.morphism_index(e[2].get<std::string>());
        table[static_cast<size_t>(c) * D.num_morphisms() + d] = r;
    }
    return table;
}

} // namespace

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("ParseError", path + ": " + e.what());
    }
}

FiniteCategory category_from_json(const Json& j) {
    RawCategory raw;
    for (const Json& o : field(j, "objects")) {
        if (!o.is_string())
            throw Error("SchemaError", "objects must be strings");
        raw.objects.push_back(o.get<std::string>());
    }
    for (const Json& m : field(j, "morphisms"))
        raw.morphisms.push_back({string_field(m, "id"), string_field(m, "src"),
                                 string_field(m, "dst")});
    for (const auto& [obj, id] : field(j, "identities").items()) {
        if (!id.is_string())
            throw Error("SchemaError", "identities must map objects to ids");
        raw.identities.emplace(obj, id.get<std::string>());
    }
    for (const Json& t : field(j, "compose")) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_string() ||
            !t[1].is_string() || !t[2].is_string())
            throw Error("SchemaError", "compose entries must be [f, g, fg]");
        raw.compose.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                               t[2].get<std::string>()});
    }
    return validate_category(raw);
}

Json category_to_json(const FiniteCategory& C) {
    Json j;
    j["objects"] = C.object_names();
    Json morphisms = Json::array();
    for (int m = 0; m < C.num_morphisms(); ++m)
        morphisms.push_back({{"id", C.morphism_names()[m]},
                             {"src", C.object_names()[C.src(m)]},
                             {"dst", C.object_names()[C.dst(m)]}});
    j["morphisms"] = std::move(morphisms);
    Json identities = Json::object();
    for (int o = 0; o < C.num_objects(); ++o)
        identities[C.object_names()[o]] = C.morphism_names()[C.identity_of(o)];
    j["identities"] = std::move(identities);
    Json compose = Json::array();
    for (int f = 0; f < C.num_morphisms(); ++f)
        for (int g = 0; g < C.num_morphisms(); ++g)
            if (C.composable(f, g))
                compose.push_back({C.morphism_names()[f], C.morphism_names()[g],
                                   C.morphism_names()[C.compose(f, g)]});
    j["compose"] = std::move(compose);
    return j;
}

MatchedPair matched_pair_from_json(const Json& j) {
    FiniteCategory C = category_from_json(field(j, "C"));
    FiniteCategory D = category_from_json(field(j, "D"));
    std::vector<int> act_L =
        action_table_from_json(C, D, D, field(j, "act_L"), "act_L");
    std::vector<int> act_R =
        action_table_from_json(C, D, C, field(j, "act_R"), "act_R");
    return validate_matched_pair(C, D, act_L, act_R);
}

Json matched_pair_to_json(const MatchedPair& mp) {
    const FiniteCategory& C = mp.C();
    const FiniteCategory& D = mp.D();
    Json j;
    j["C"] = category_to_json(C);
    j["D"] = category_to_json(D);
    Json act_L = Json::array(), act_R = Json::array();
    for (int c = 0; c < C.num_morphisms(); ++c)
        for (int d = 0; d < D.num_morphisms(); ++d) {
            if (!mp.defined(c, d)) continue;
            act_L.push_back({C.morphism_names()[c], D.morphism_names()[d],
                             D.morphism_names()[mp.act_L(c, d)]});
            act_R.push_back({C.morphism_names()[c], D.morphism_names()[d],
                             C.morphism_names()[mp.act_R(c, d)]});
        }
    j["act_L"] = std::move(act_L);
    j["act_R"] = std::move(act_R);
    return j;
}

WeightedGraph weighted_graph_from_json(const Json& j) {
    WeightedGraph g;
    for (const Json& v : field(j, "vertices")) {
        if (!v.is_string())
            throw Error("SchemaError", "vertices must be strings");
        g.vertices.push_back(v.get<std::string>());
    }
    for (const Json& e : field(j, "edges")) {
        WeightedGraph::Edge edge{string_field(e, "id"), string_field(e, "src"),
                                 string_field(e, "dst"), 1};
        if (e.contains("p")) {
            if (!e.at("p").is_number_integer())
                throw Error("SchemaError", "edge weight p must be an integer");
            edge.p = e.at("p").get<long>();
        }
        g.edges.push_back(std::move(edge));
    }
    validate_weighted_graph(g);
    return g;
}

Json weighted_graph_to_json(const WeightedGraph& g) {
    Json j;
    j["vertices"] = g.vertices;
    Json edges = Json::array();
    for (const auto& e : g.edges)
        edges.push_back(
            {{"id", e.id}, {"src", e.src}, {"dst", e.dst}, {"p", e.p}});
    j["edges"] = std::move(edges);
    return j;
}

IntMatrix matrix_from_json(const Json& j) {
    const Json& rows = field(j, "rows");
    const Json& cols = field(j, "cols");
    if (!rows.is_number_integer() || !cols.is_number_integer())
        throw Error("SchemaError", "matrix rows/cols must be integers");
    IntMatrix m(rows.get<int>(), cols.get<int>());
    for (const Json& e : field(j, "entries")) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw Error("SchemaError", "matrix entries must be [i, j, v]");
        m.set(e[0].get<int>(), e[1].get<int>(), mpz_from_json(e[2], "matrix"));
    }
    return m;
}

Json matrix_to_json(const IntMatrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json entries = Json::array();
    for (int col = 0; col < m.cols(); ++col)
        for (const auto& [row, v] : m.column(col))
            entries.push_back({row, col, v.get_str()});
    j["entries"] = std::move(entries);
    return j;
}

Json group_to_json(const AbelianGroup& g) {
    Json j;
    j["free_rank"] = g.free_rank;
    Json torsion = Json::array();
    for (const auto& d : g.torsion) torsion.push_back(mpz_to_json(d));
    j["torsion"] = std::move(torsion);
    j["pretty"] = g.to_string();
    return j;
}

Json homology_report_json(int degree, const AbelianGroup& g) {
    Json j;
    j["degree"] = degree;
    j["free_rank"] = g.free_rank;
    Json torsion = Json::array();
    for (const auto& d : g.torsion) torsion.push_back(mpz_to_json(d));
    j["torsion"] = std::move(torsion);
    j["pretty"] = g.to_string();
    return j;
}

Json chain_complex_to_json(const ChainComplex& cx) {
    Json j;
    j["max_degree"] = cx.max_degree;
    Json bases = Json::array();
    for (const auto& basis : cx.bases) bases.push_back(basis);
    j["bases"] = std::move(bases);
    Json boundaries = Json::array();
    for (const auto& b : cx.boundaries) boundaries.push_back(matrix_to_json(b));
    j["boundaries"] = std::move(boundaries);
    return j;
}

Phase phase_from_string(const std::string& s) {
    try {
        mpq_class q(s);
        q.canonicalize();
        return Phase(q);
    } catch (const std::invalid_argument&) {
        throw Error("SchemaError", "malformed fraction \"" + s + "\"");
    }
}

Cochain2 cochain2_from_json(const FiniteCategory& A, const FiniteCategory& B,
                            const Json& entries) {
    if (!entries.is_array())
        throw Error("SchemaError", "cochain must be an array of [f, g, value]");
    Cochain2 c;
    for (const Json& e : entries) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_string() ||
            !e[1].is_string() || !e[2].is_string())
            throw Error("SchemaError",
                        "cochain entries must be [f, g, \"a/b\"]");
        int f = A.morphism_index(e[0].get<std::string>());
        int g = B.morphism_index(e[1].get<std::string>());
        Phase v = phase_from_string(e[2].get<std::string>());
        if (!v.is_zero()) c[{f, g}] = v;
    }
    return c;
}

Json cochain2_to_json(const FiniteCategory& A, const FiniteCategory& B,
                      const Cochain2& c) {
    Json entries = Json::array();
    for (const auto& [key, val] : c)
        entries.push_back({A.morphism_names()[key.first],
                           B.morphism_names()[key.second], val.to_string()});
    return entries;
}

Cochain1 cochain1_from_json(const FiniteCategory& C, const Json& entries) {
    if (!entries.is_array())
        throw Error("SchemaError", "1-cochain must be an array of [f, value]");
    Cochain1 b;
    for (const Json& e : entries) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
            !e[1].is_string())
            throw Error("SchemaError", "1-cochain entries must be [f, \"a/b\"]");
        int f = C.morphism_index(e[0].get<std::string>());
        Phase v = phase_from_string(e[1].get<std::string>());
        if (!v.is_zero()) b[f] = v;
    }
    return b;
}

Json cochain1_to_json(const FiniteCategory& C, const Cochain1& b) {
    Json entries = Json::array();
    for (const auto& [f, val] : b)
        entries.push_back({C.morphism_names()[f], val.to_string()});
    return entries;
}

TotalCocycle total_cocycle_from_json(const MatchedPair& mp, const Json& j) {
    TotalCocycle phi;
    if (j.contains("phi_20"))
        phi.phi20 = cochain2_from_json(mp.C(), mp.C(), j.at("phi_20"));
    if (j.contains("phi_11"))
        phi.phi11 = cochain2_from_json(mp.C(), mp.D(), j.at("phi_11"));
    if (j.contains("phi_02"))
        phi.phi02 = cochain2_from_json(mp.D(), mp.D(), j.at("phi_02"));
    return phi;
}

Json total_cocycle_to_json(const MatchedPair& mp, const TotalCocycle& phi) {
    Json j;
    j["phi_20"] = cochain2_to_json(mp.C(), mp.C(), phi.phi20);
    j["phi_11"] = cochain2_to_json(mp.C(), mp.D(), phi.phi11);
    j["phi_02"] = cochain2_to_json(mp.D(), mp.D(), phi.phi02);
    return j;
}

} // namespace mpx
