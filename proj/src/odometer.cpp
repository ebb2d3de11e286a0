#include "mpx/odometer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mpx {

namespace {

void check_cap(long n, long cap, const std::string& what) {
    if (n > cap)
        throw Error("CapExceeded", what + " enumeration exceeds the cap of " +
                                       std::to_string(cap));
}

/* Face i of a composable (q+1)-tuple, 0 <= i <= q+1; a single path has the
 * two vertex faces s (i = 0) and r (i = 1). */
std::vector<EPath> tuple_face(const WeightedGraph& g,
                              const std::vector<EPath>& t, int i) {
    const int n = static_cast<int>(t.size());
    if (n == 1) return {vertex_path(i == 0 ? path_s(g, t[0]) : path_r(g, t[0]))};
    if (i == 0) return {t.begin() + 1, t.end()};
    if (i == n) return {t.begin(), t.end() - 1};
    std::vector<EPath> out(t.begin(), t.begin() + (i - 1));
    out.push_back(path_concat(g, t[i - 1], t[i]));
    out.insert(out.end(), t.begin() + i + 1, t.end());
    return out;
}

std::vector<mpz_class> ambient_vector(size_t n) {
    return std::vector<mpz_class>(n, 0);
}

} // namespace

int WeightedGraph::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    throw Error("UnknownVertex", "no vertex named '" + name + "'");
}

int WeightedGraph::edge_index(const std::string& id) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return static_cast<int>(i);
    throw Error("UnknownEdge", "no edge named '" + id + "'");
}

void validate_weighted_graph(const WeightedGraph& g) {
    std::set<std::string> seen(g.vertices.begin(), g.vertices.end());
    if (seen.size() != g.vertices.size())
        throw Error("DuplicateId", "repeated vertex name");
    std::set<std::string> ids;
    for (const auto& e : g.edges) {
        if (!ids.insert(e.id).second)
            throw Error("DuplicateId", "repeated edge id '" + e.id + "'");
        if (e.p < 1)
            throw Error("InvalidWeight",
                        "edge '" + e.id + "' has weight " + std::to_string(e.p));
        if (!seen.count(e.src) || !seen.count(e.dst))
            throw Error("UnknownVertex",
                        "edge '" + e.id + "' has an unknown endpoint");
    }
}

EPath vertex_path(int v) { return EPath{v, {}}; }

EPath make_path(const WeightedGraph& g, const std::vector<int>& edges) {
    if (edges.empty())
        throw Error("NotComposable",
                    "an empty edge list does not determine a base vertex; "
                    "use vertex_path");
    for (size_t i = 0; i + 1 < edges.size(); ++i)
        if (g.edges[edges[i]].src != g.edges[edges[i + 1]].dst)
            throw Error("NotComposable", "edges '" + g.edges[edges[i]].id +
                                             "' and '" +
                                             g.edges[edges[i + 1]].id +
                                             "' are not composable");
    return EPath{g.vertex_index(g.edges[edges.front()].dst), edges};
}

int path_r(const WeightedGraph& g, const EPath& mu) {
    return mu.edges.empty() ? mu.r_vertex
                            : g.vertex_index(g.edges[mu.edges.front()].dst);
}

int path_s(const WeightedGraph& g, const EPath& mu) {
    return mu.edges.empty() ? mu.r_vertex
                            : g.vertex_index(g.edges[mu.edges.back()].src);
}

mpz_class path_weight(const WeightedGraph& g, const EPath& mu) {
    mpz_class w = 1;
    for (int e : mu.edges) w *= g.edges[e].p;
    return w;
}

EPath path_concat(const WeightedGraph& g, const EPath& mu, const EPath& nu) {
    if (path_s(g, mu) != path_r(g, nu))
        throw Error("NotComposable", "paths " + path_label(g, mu) + " and " +
                                         path_label(g, nu) +
                                         " are not composable");
    EPath out{path_r(g, mu), mu.edges};
    out.edges.insert(out.edges.end(), nu.edges.begin(), nu.edges.end());
    return out;
}

std::string path_label(const WeightedGraph& g, const EPath& mu) {
    if (mu.edges.empty()) return "(" + g.vertices[mu.r_vertex] + ")";
    std::string out;
    for (int e : mu.edges) {
        if (!out.empty()) out += ".";
        out += g.edges[e].id;
    }
    return out;
}

OdometerPath odometer_path(const WeightedGraph& g, const EPath& base,
                           const mpz_class& m) {
    mpz_class p = path_weight(g, base);
    if (m < 0 || m >= p)
        throw Error("InvalidWeight", "offset " + m.get_str() +
                                         " is out of range for weight " +
                                         p.get_str());
    return OdometerPath{base, m};
}

std::pair<OdometerPath, mpz_class> act(const WeightedGraph& g, int v,
                                       const mpz_class& a,
                                       const OdometerPath& xi) {
    if (v != path_r(g, xi.base))
        throw Error("VertexMismatch",
                    "group element at vertex '" + g.vertices[v] +
                        "' cannot act on a path with range '" +
                        g.vertices[path_r(g, xi.base)] + "'");
    mpz_class p = path_weight(g, xi.base), t = a + xi.m, carry, rem;
    mpz_fdiv_qr(carry.get_mpz_t(), rem.get_mpz_t(), t.get_mpz_t(),
                p.get_mpz_t());
    return {OdometerPath{xi.base, rem}, carry};
}

std::pair<std::vector<OdometerPath>, mpz_class> act_on_path_tuple(
    const WeightedGraph& g, const mpz_class& a,
    const std::vector<OdometerPath>& xs) {
    for (size_t i = 0; i + 1 < xs.size(); ++i)
        if (path_s(g, xs[i].base) != path_r(g, xs[i + 1].base))
            throw Error("NotComposable", "tuple entries " +
                                             std::to_string(i) + " and " +
                                             std::to_string(i + 1) +
                                             " are not composable");
    std::vector<OdometerPath> out;
    mpz_class carry = a;
    for (const auto& xi : xs) {
        auto [eta, c] = act(g, path_r(g, xi.base), carry, xi);
        out.push_back(eta);
        carry = c;
    }
    return {out, carry};
}

OrderRho order_and_rho(const WeightedGraph& g,
                       const std::vector<OdometerPath>& xs) {
    if (xs.empty()) throw Error("NotComposable", "empty tuple");
    for (size_t i = 0; i + 1 < xs.size(); ++i)
        if (path_s(g, xs[i].base) != path_r(g, xs[i + 1].base))
            throw Error("NotComposable", "tuple entries " +
                                             std::to_string(i) + " and " +
                                             std::to_string(i + 1) +
                                             " are not composable");
    OrderRho out;
    out.O = 1;
    for (const auto& xi : xs) out.O *= path_weight(g, xi.base);
    out.rho.assign(xs.size(), 1);
    if (xs.size() > 1) out.rho.back() = path_weight(g, xs.back().base);
    return out;
}

IntMatrix matrix_M(const WeightedGraph& g) {
    IntMatrix m(static_cast<int>(g.vertices.size()),
                static_cast<int>(g.edges.size()));
    for (size_t j = 0; j < g.edges.size(); ++j) {
        m.add(g.vertex_index(g.edges[j].dst), static_cast<int>(j),
              g.edges[j].p);
        m.add(g.vertex_index(g.edges[j].src), static_cast<int>(j), -1);
    }
    return m;
}

std::pair<AbelianGroup, AbelianGroup> graph_homology(const WeightedGraph& g) {
    IntMatrix d(static_cast<int>(g.vertices.size()),
                static_cast<int>(g.edges.size()));
    for (size_t j = 0; j < g.edges.size(); ++j) {
        d.add(g.vertex_index(g.edges[j].src), static_cast<int>(j), 1);
        d.add(g.vertex_index(g.edges[j].dst), static_cast<int>(j), -1);
    }
    AbelianGroup h0 = cokernel_group(d, static_cast<int>(g.vertices.size()));
    AbelianGroup h1{kernel_basis(d).cols(), {}};
    return {h0, h1};
}

std::string OdometerReport::to_string() const {
    std::ostringstream os;
    os << "H0 = " << H0.to_string() << "\n";
    if (split == TriState::yes)
        os << "H1 = " << H1->to_string() << " (split extension of "
           << coker_M.to_string() << " by " << H1_graph.to_string() << ")\n";
    else
        os << "H1: 0 -> " << H1_graph.to_string() << " -> H1 -> "
           << coker_M.to_string() << " -> 0 (extension not resolved)\n";
    os << "H2 = " << H2.to_string() << "\n";
    if (gcd_criterion)
        os << "gcd criterion met at length " << gcd_established_at
           << " (coker M = 0)\n";
    else
        os << "gcd criterion not established within the search length\n";
    return os.str();
}

OdometerReport odometer_homology(const WeightedGraph& g, int L, long cap) {
    validate_weighted_graph(g);
    OdometerReport rep;
    auto [h0, h1e] = graph_homology(g);
    rep.H0 = h0;
    rep.H1_graph = h1e;
    IntMatrix M = matrix_M(g);
    rep.H2 = AbelianGroup{kernel_basis(M).cols(), {}};
    rep.coker_M = cokernel_group(M, static_cast<int>(g.vertices.size()));
    if (rep.coker_M.torsion.empty()) {
        rep.split = TriState::yes;
        rep.H1 = AbelianGroup{rep.H1_graph.free_rank + rep.coker_M.free_rank, {}};
    } else {
        rep.split = TriState::unknown;
    }

    /* Bounded search for gcd{p(mu) - p(nu) : mu, nu parallel} = 1. Per
     * (r, s)-cell, the gcd of pairwise gaps is the gcd of gaps to a fixed
     * base weight. */
    std::map<std::pair<int, int>, std::pair<mpz_class, mpz_class>> cells;
    std::vector<EPath> frontier;
    for (size_t v = 0; v < g.vertices.size(); ++v)
        frontier.push_back(vertex_path(static_cast<int>(v)));
    long seen = static_cast<long>(frontier.size());
    for (int len = 0; len <= L; ++len) {
        for (const EPath& mu : frontier) {
            std::pair<int, int> key{path_r(g, mu), path_s(g, mu)};
            mpz_class w = path_weight(g, mu);
            auto it = cells.find(key);
            if (it == cells.end())
                cells.emplace(key, std::make_pair(w, mpz_class(0)));
            else
                mpz_gcd(it->second.second.get_mpz_t(),
                        it->second.second.get_mpz_t(),
                        mpz_class(abs(w - it->second.first)).get_mpz_t());
        }
        mpz_class overall = 0;
        for (const auto& [key, cell] : cells)
            mpz_gcd(overall.get_mpz_t(), overall.get_mpz_t(),
                    cell.second.get_mpz_t());
        if (overall == 1) {
            rep.gcd_criterion = true;
            rep.gcd_established_at = len;
            break;
        }
        if (len == L) break;
        std::vector<EPath> next;
        for (const EPath& mu : frontier)
            for (size_t e = 0; e < g.edges.size(); ++e)
                if (g.vertex_index(g.edges[e].dst) == path_s(g, mu)) {
                    EPath nu = mu;
                    nu.edges.push_back(static_cast<int>(e));
                    next.push_back(std::move(nu));
                }
        seen += static_cast<long>(next.size());
        if (seen > cap) break; /* sufficient condition only; stop quietly */
        frontier = std::move(next);
    }
    return rep;
}

std::vector<EPath> bounded_paths(const WeightedGraph& g, int L, long cap) {
    std::vector<EPath> out, frontier;
    for (size_t v = 0; v < g.vertices.size(); ++v)
        frontier.push_back(vertex_path(static_cast<int>(v)));
    for (int len = 0; len <= L; ++len) {
        out.insert(out.end(), frontier.begin(), frontier.end());
        check_cap(static_cast<long>(out.size()), cap, "path");
        if (len == L) break;
        std::vector<EPath> next;
        for (const EPath& mu : frontier)
            for (size_t e = 0; e < g.edges.size(); ++e)
                if (g.vertex_index(g.edges[e].dst) == path_s(g, mu)) {
                    EPath nu = mu;
                    nu.edges.push_back(static_cast<int>(e));
                    next.push_back(std::move(nu));
                }
        frontier = std::move(next);
    }
    return out;
}

std::vector<std::vector<EPath>> bounded_path_tuples(const WeightedGraph& g,
                                                    int k, int L, long cap) {
    std::vector<std::vector<EPath>> out;
    if (k == 0) {
        /* Degree-0 basis: the vertices, wrapped as singleton vertex paths. */
        for (size_t v = 0; v < g.vertices.size(); ++v)
            out.push_back({vertex_path(static_cast<int>(v))});
        return out;
    }
    std::vector<EPath> paths = bounded_paths(g, L, cap);
    std::vector<EPath> cur;
    std::function<void(int, int)> rec = [&](int depth, int used) {
        if (depth == k) {
            out.push_back(cur);
            check_cap(static_cast<long>(out.size()), cap, "path tuple");
            return;
        }
        for (const EPath& mu : paths) {
            if (used + mu.length() > L) continue;
            if (depth > 0 && path_s(g, cur.back()) != path_r(g, mu)) continue;
            cur.push_back(mu);
            rec(depth + 1, used + mu.length());
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

IntMatrix delta_tilde(const WeightedGraph& g, int q, int L, long cap) {
    validate_weighted_graph(g);
    auto rows = bounded_path_tuples(g, q, L, cap);
    auto cols = bounded_path_tuples(g, q + 1, L, cap);
    std::map<std::vector<EPath>, int> ridx;
    for (size_t i = 0; i < rows.size(); ++i)
        ridx[rows[i]] = static_cast<int>(i);
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        for (int i = 0; i <= q; ++i)
            m.add(ridx.at(tuple_face(g, cols[j], i)), static_cast<int>(j),
                  (i % 2 == 0) ? 1 : -1);
        mpz_class w = path_weight(g, cols[j].back());
        m.add(ridx.at(tuple_face(g, cols[j], q + 1)), static_cast<int>(j),
              (q % 2 == 0) ? -w : w);
    }
    return m;
}

DecompositionReport verify_decomposition(const WeightedGraph& g, int L,
                                         long cap) {
    validate_weighted_graph(g);
    std::vector<EPath> paths = bounded_paths(g, L, cap);
    std::map<EPath, int> pidx;
    for (size_t i = 0; i < paths.size(); ++i)
        pidx[paths[i]] = static_cast<int>(i);
    const int n_amb = static_cast<int>(paths.size());

    auto dt2 = [&](const EPath& alpha, const EPath& beta,
                   std::vector<mpz_class>& acc, const mpz_class& scale) {
        /* Dt(alpha, beta) = beta - alpha beta + p(beta) alpha. */
        acc[pidx.at(beta)] += scale;
        acc[pidx.at(path_concat(g, alpha, beta))] -= scale;
        acc[pidx.at(alpha)] += scale * path_weight(g, beta);
    };

    /* Pair columns sorted by total length, with prefix counts. */
    auto pairs = bounded_path_tuples(g, 2, L, cap);
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) {
                         return a[0].length() + a[1].length() <
                                b[0].length() + b[1].length();
                     });
    IntMatrix all_cols(n_amb, static_cast<int>(pairs.size()));
    std::vector<int> count_below(L + 2, 0); /* pairs with total < n */
    for (size_t j = 0; j < pairs.size(); ++j) {
        std::vector<mpz_class> col = ambient_vector(n_amb);
        dt2(pairs[j][0], pairs[j][1], col, 1);
        for (int i = 0; i < n_amb; ++i)
            if (col[i] != 0) all_cols.add(i, static_cast<int>(j), col[i]);
        int total = pairs[j][0].length() + pairs[j][1].length();
        for (int n = total + 1; n <= L + 1; ++n) ++count_below[n];
    }

    DecompositionReport rep;
    for (const EPath& mu : paths) {
        const int n = mu.length();
        if (n < 1) continue;
        std::vector<mpz_class> t = ambient_vector(n_amb);
        t[pidx.at(mu)] += 1;
        for (int i = 1; i <= n; ++i) {
            EPath tail{-1, {mu.edges.begin() + i, mu.edges.end()}};
            tail.r_vertex = (i < n)
                                ? g.vertex_index(g.edges[mu.edges[i]].dst)
                                : path_s(g, mu);
            EPath step = make_path(g, {mu.edges[i - 1]});
            t[pidx.at(step)] -= path_weight(g, tail);
        }
        EPath prefix{path_r(g, mu), {mu.edges.begin(), mu.edges.end() - 1}};
        EPath last = make_path(g, {mu.edges.back()});
        dt2(prefix, last, t, 1);
        IntMatrix A = all_cols.columns_slice(0, count_below[n]);
        if (!solve_integer(A, t)) {
            rep.ok = false;
            rep.witness = "span identity fails for " + path_label(g, mu);
            return rep;
        }
    }

    /* im(Dt_{1,1}) meets ZE^1 trivially on the bounded span: any combination
     * vanishing off the length-1 rows must vanish entirely. */
    std::vector<int> rest_rows;
    for (int i = 0; i < n_amb; ++i)
        if (paths[i].length() != 1) rest_rows.push_back(i);
    IntMatrix rest(static_cast<int>(rest_rows.size()), all_cols.cols());
    for (size_t k = 0; k < rest_rows.size(); ++k)
        for (int j = 0; j < all_cols.cols(); ++j) {
            mpz_class v = all_cols.get(rest_rows[k], j);
            if (v != 0) rest.add(static_cast<int>(k), j, v);
        }
    IntMatrix ker = kernel_basis(rest);
    if (!(all_cols * ker).is_zero()) {
        rep.ok = false;
        rep.witness = "im(Dt_{1,1}) meets ZE^1 nontrivially on the bounded span";
    }
    return rep;
}

} // namespace mpx
