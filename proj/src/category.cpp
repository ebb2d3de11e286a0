#include "mpx/category.hpp"

#include <algorithm>
#include <set>

namespace mpx {

int FiniteCategory::compose(int f, int g) const {
    int r = table_[static_cast<size_t>(f) * morphism_names_.size() + g];
    if (r < 0)
        throw Error("CompositionIllTyped", "compose(" + morphism_names_[f] + ", " +
                                               morphism_names_[g] + ") is undefined");
    return r;
}

int FiniteCategory::object_index(const std::string& name) const {
    for (int i = 0; i < num_objects(); ++i)
        if (object_names_[i] == name) return i;
    throw Error("UnknownObject", "object '" + name + "' not found");
}

int FiniteCategory::morphism_index(const std::string& name) const {
    for (int i = 0; i < num_morphisms(); ++i)
        if (morphism_names_[i] == name) return i;
    throw Error("UnknownMorphism", "morphism '" + name + "' not found");
}

FiniteCategory validate_category(const RawCategory& raw) {
    FiniteCategory C;
    C.object_names_ = raw.objects;
    {
        std::set<std::string> seen(raw.objects.begin(), raw.objects.end());
        if (seen.size() != raw.objects.size())
            throw Error("DuplicateIdentifier", "object list contains duplicates");
    }
    std::map<std::string, int> obj_index, mor_index;
    for (int i = 0; i < static_cast<int>(raw.objects.size()); ++i)
        obj_index[raw.objects[i]] = i;
    for (const auto& m : raw.morphisms) {
        if (mor_index.count(m.id))
            throw Error("DuplicateIdentifier", "morphism id '" + m.id + "' repeated");
        if (!obj_index.count(m.src) || !obj_index.count(m.dst))
            throw Error("UnknownObject",
                        "morphism '" + m.id + "' references an unknown object");
        mor_index[m.id] = static_cast<int>(C.morphism_names_.size());
        C.morphism_names_.push_back(m.id);
        C.src_.push_back(obj_index[m.src]);
        C.dst_.push_back(obj_index[m.dst]);
    }
    const int M = C.num_morphisms();

    C.identity_.assign(raw.objects.size(), -1);
    for (int x = 0; x < static_cast<int>(raw.objects.size()); ++x) {
        auto it = raw.identities.find(raw.objects[x]);
        if (it == raw.identities.end() || !mor_index.count(it->second))
            throw Error("MissingIdentity",
                        "object '" + raw.objects[x] + "' has no identity morphism");
        int id = mor_index[it->second];
        if (C.src_[id] != x || C.dst_[id] != x)
            throw Error("MissingIdentity", "identity of '" + raw.objects[x] +
                                               "' is not an endomorphism of it");
        C.identity_[x] = id;
    }

    C.table_.assign(static_cast<size_t>(M) * M, -1);
    for (const auto& [f_id, g_id, fg_id] : raw.compose) {
        if (!mor_index.count(f_id) || !mor_index.count(g_id) || !mor_index.count(fg_id))
            throw Error("UnknownMorphism", "composition entry references unknown id");
        int f = mor_index[f_id], g = mor_index[g_id], fg = mor_index[fg_id];
        if (C.src_[f] != C.dst_[g])
            throw Error("CompositionIllTyped",
                        "table entry for non-composable pair (" + f_id + ", " + g_id + ")");
        if (C.src_[fg] != C.src_[g] || C.dst_[fg] != C.dst_[f])
            throw Error("CompositionIllTyped", "compose(" + f_id + ", " + g_id + ") = " +
                                                   fg_id + " has wrong source or range");
        int& slot = C.table_[static_cast<size_t>(f) * M + g];
        if (slot >= 0 && slot != fg)
            throw Error("CompositionIllTyped",
                        "conflicting table entries for (" + f_id + ", " + g_id + ")");
        slot = fg;
    }
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g)
            if (C.src_[f] == C.dst_[g] && C.table_[static_cast<size_t>(f) * M + g] < 0)
                throw Error("CompositionUndefined",
                            "no table entry for composable pair (" + C.morphism_names_[f] +
                                ", " + C.morphism_names_[g] + ")");

    /* Unit laws. */
    for (int f = 0; f < M; ++f) {
        if (C.compose(f, C.identity_[C.src_[f]]) != f ||
            C.compose(C.identity_[C.dst_[f]], f) != f)
            throw Error("MissingIdentity", "identity law fails at morphism '" +
                                               C.morphism_names_[f] + "'");
    }
    /* Associativity, exhaustively. */
    for (int f = 0; f < M; ++f)
        for (int g = 0; g < M; ++g) {
            if (C.src_[f] != C.dst_[g]) continue;
            int fg = C.compose(f, g);
            for (int h = 0; h < M; ++h) {
                if (C.src_[g] != C.dst_[h]) continue;
                if (C.compose(fg, h) != C.compose(f, C.compose(g, h)))
                    throw Error("AssociativityViolation",
                                "witness triple (" + C.morphism_names_[f] + ", " +
                                    C.morphism_names_[g] + ", " + C.morphism_names_[h] + ")");
            }
        }
    return C;
}

int tuple_r(const FiniteCategory& C, const Tuple& t) {
    return t.ms.empty() ? t.obj : C.dst(t.ms.front());
}

int tuple_s(const FiniteCategory& C, const Tuple& t) {
    return t.ms.empty() ? t.obj : C.src(t.ms.back());
}

std::string tuple_label(const FiniteCategory& C, const Tuple& t) {
    if (t.ms.empty()) return "[" + C.object_names()[t.obj] + "]";
    std::string s = "[";
    for (size_t i = 0; i < t.ms.size(); ++i)
        s += C.morphism_names()[t.ms[i]] + (i + 1 < t.ms.size() ? "," : "");
    return s + "]";
}

std::vector<Tuple> composable_tuples(const FiniteCategory& C, int k, long cap) {
    std::vector<Tuple> out;
    if (k == 0) {
        for (int x = 0; x < C.num_objects(); ++x) out.push_back(Tuple{{}, x});
        return out;
    }
    /* Depth-first in lexicographic order by morphism index. */
    std::vector<int> stack;
    stack.reserve(k);
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(stack.size()) == k) {
            if (static_cast<long>(out.size()) >= cap)
                throw Error("DegreeTooLarge",
                            "composable tuple enumeration exceeds cap at degree " +
                                std::to_string(k));
            out.push_back(Tuple{stack, -1});
            return;
        }
        for (int m = 0; m < C.num_morphisms(); ++m) {
            if (!stack.empty() && C.src(stack.back()) != C.dst(m)) continue;
            stack.push_back(m);
            self(self);
            stack.pop_back();
        }
    };
    extend(extend);
    return out;
}

FiniteCategory path_category(const DirectedGraph& g) {
    std::map<std::string, int> vindex;
    for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i)
        vindex[g.vertices[i]] = i;
    const int V = static_cast<int>(g.vertices.size());
    std::vector<std::vector<int>> out_edges(V); // by source vertex
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (!vindex.count(g.edges[e].src) || !vindex.count(g.edges[e].dst))
            throw Error("UnknownObject", "edge '" + g.edges[e].id +
                                             "' references an unknown vertex");
        out_edges[vindex.at(g.edges[e].src)].push_back(e);
    }
    /* Cycle detection by DFS with colouring; reports one cycle. */
    std::vector<int> colour(V, 0), parent_edge(V, -1);
    auto dfs = [&](auto&& self, int v) -> void {
        colour[v] = 1;
        for (int e : out_edges[v]) {
            /* Edge e goes src -> dst; follow it backwards in diagram order:
               treat morphism direction dst <- src, traversal over underlying arrows. */
            int w = vindex.at(g.edges[e].dst);
            if (colour[w] == 1) {
                std::string cyc = g.edges[e].id;
                for (int u = v; u != w && parent_edge[u] >= 0;) {
                    cyc += " " + g.edges[parent_edge[u]].id;
                    u = vindex.at(g.edges[parent_edge[u]].src);
                }
                throw Error("CyclicGraph", "cycle through edges: " + cyc);
            }
            if (colour[w] == 0) {
                parent_edge[w] = e;
                self(self, w);
            }
        }
        colour[v] = 2;
    };
    for (int v = 0; v < V; ++v)
        if (colour[v] == 0) dfs(dfs, v);

    /* Enumerate all paths; a path is a sequence of edges e1 e2 ... with
       dst(e_{i+1}) = src(e_i) (diagram order: the composite traverses the last
       edge first). Morphism src = src of last edge, dst = dst of first. */
    struct Path {
        std::vector<int> edges;
        int src, dst;
    };
    std::vector<Path> paths;
    for (int v = 0; v < V; ++v) paths.push_back({{}, v, v}); // identities
    size_t frontier_begin = 0;
    while (frontier_begin < paths.size()) {
        size_t frontier_end = paths.size();
        for (size_t i = frontier_begin; i < frontier_end; ++i) {
            Path p = paths[i];
            /* Extend on the source side: new last edge must end at p.src. */
            for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
                if (vindex.at(g.edges[e].dst) != p.src) continue;
                if (p.edges.empty()) continue; /* identities extended separately below */
                Path q = p;
                q.edges.push_back(e);
                q.src = vindex.at(g.edges[e].src);
                paths.push_back(q);
            }
        }
        if (frontier_begin == 0) {
            /* Seed length-1 paths. */
            for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
                paths.push_back({{e},
                                 vindex.at(g.edges[e].src),
                                 vindex.at(g.edges[e].dst)});
        }
        frontier_begin = frontier_end;
    }

    RawCategory raw;
    raw.objects = g.vertices;
    auto path_name = [&](const Path& p) {
        if (p.edges.empty()) return "id_" + g.vertices[p.src];
        std::string n;
        for (size_t i = 0; i < p.edges.size(); ++i)
            n += g.edges[p.edges[i]].id + (i + 1 < p.edges.size() ? "." : "");
        return n;
    };
    /* Key identity paths by their vertex; nonempty paths by their edge list. */
    auto path_key = [](const Path& p) {
        return std::make_pair(p.edges.empty() ? p.src : -1, p.edges);
    };
    std::map<std::pair<int, std::vector<int>>, int> path_index;
    for (int i = 0; i < static_cast<int>(paths.size()); ++i) {
        const Path& p = paths[i];
        raw.morphisms.push_back(
            {path_name(p), g.vertices[p.src], g.vertices[p.dst]});
        path_index[path_key(p)] = i;
    }
    for (int v = 0; v < V; ++v) raw.identities[g.vertices[v]] = "id_" + g.vertices[v];
    for (const auto& f : paths)
        for (const auto& gg : paths) {
            if (f.src != gg.dst) continue;
            Path comp{f.edges, gg.src, f.dst};
            comp.edges.insert(comp.edges.end(), gg.edges.begin(), gg.edges.end());
            raw.compose.push_back({path_name(f), path_name(gg),
                                   path_name(paths[path_index.at(path_key(comp))])});
        }
    return validate_category(raw);
}

FiniteCategory monoid_category(const std::vector<std::string>& element_names,
                               const std::vector<std::vector<int>>& table, int unit) {
    const int n = static_cast<int>(element_names.size());
    if (unit < 0 || unit >= n) throw Error("NoUnit", "unit index out of range");
    if (static_cast<int>(table.size()) != n)
        throw Error("NotAssociative", "multiplication table is not total");
    for (const auto& row : table)
        if (static_cast<int>(row.size()) != n)
            throw Error("NotAssociative", "multiplication table is not total");
    for (int i = 0; i < n; ++i)
        if (table[unit][i] != i || table[i][unit] != i)
            throw Error("NoUnit", "'" + element_names[unit] + "' is not a unit");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw Error("NotAssociative",
                                "witness (" + element_names[a] + ", " + element_names[b] +
                                    ", " + element_names[c] + ")");
    RawCategory raw;
    raw.objects = {"*"};
    for (const auto& e : element_names) raw.morphisms.push_back({e, "*", "*"});
    raw.identities["*"] = element_names[unit];
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            raw.compose.push_back(
                {element_names[a], element_names[b], element_names[table[a][b]]});
    return validate_category(raw);
}

FiniteCategory product_category(const FiniteCategory& A, const FiniteCategory& B) {
    RawCategory raw;
    auto oname = [&](int a, int b) {
        return "(" + A.object_names()[a] + "," + B.object_names()[b] + ")";
    };
    auto mname = [&](int f, int g) {
        return "(" + A.morphism_names()[f] + "," + B.morphism_names()[g] + ")";
    };
    for (int a = 0; a < A.num_objects(); ++a)
        for (int b = 0; b < B.num_objects(); ++b) raw.objects.push_back(oname(a, b));
    for (int f = 0; f < A.num_morphisms(); ++f)
        for (int g = 0; g < B.num_morphisms(); ++g)
            raw.morphisms.push_back({mname(f, g), oname(A.src(f), B.src(g)),
                                     oname(A.dst(f), B.dst(g))});
    for (int a = 0; a < A.num_objects(); ++a)
        for (int b = 0; b < B.num_objects(); ++b)
            raw.identities[oname(a, b)] = mname(A.identity_of(a), B.identity_of(b));
    for (int f1 = 0; f1 < A.num_morphisms(); ++f1)
        for (int g1 = 0; g1 < B.num_morphisms(); ++g1)
            for (int f2 = 0; f2 < A.num_morphisms(); ++f2)
                for (int g2 = 0; g2 < B.num_morphisms(); ++g2) {
                    if (A.src(f1) != A.dst(f2) || B.src(g1) != B.dst(g2)) continue;
                    raw.compose.push_back({mname(f1, g1), mname(f2, g2),
                                           mname(A.compose(f1, f2), B.compose(g1, g2))});
                }
    return validate_category(raw);
}

FiniteCategory discrete_category(const std::vector<std::string>& objects) {
    RawCategory raw;
    raw.objects = objects;
    for (const auto& x : objects) {
        raw.morphisms.push_back({"id_" + x, x, x});
        raw.identities[x] = "id_" + x;
    }
    for (const auto& x : objects)
        raw.compose.push_back({"id_" + x, "id_" + x, "id_" + x});
    return validate_category(raw);
}

} // namespace mpx
