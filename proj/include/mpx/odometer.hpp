#pragma once
#include <optional>
#include <string>
#include <vector>

#include "mpx/abelian.hpp"
#include "mpx/category.hpp"

namespace mpx {

/* A finite directed graph E with a positive integer weight on each edge,
 * extended multiplicatively to paths. Edges point src -> dst; as morphisms,
 * s(e) = src and r(e) = dst. */
struct WeightedGraph {
    std::vector<std::string> vertices;
    struct Edge {
        std::string id, src, dst;
        long p = 1;
    };
    std::vector<Edge> edges;

    int vertex_index(const std::string& name) const;
    int edge_index(const std::string& id) const;
};

/* Checks weights >= 1, distinct ids, endpoints present. Throws
 * UnknownObject / DuplicateId / InvalidWeight. */
void validate_weighted_graph(const WeightedGraph& g);

/* A path in E, edges listed in composition order (the r-side edge first);
 * r_vertex carries the range so that vertex paths are representable. */
struct EPath {
    int r_vertex = -1;
    std::vector<int> edges;
    auto operator<=>(const EPath&) const = default;
    int length() const { return static_cast<int>(edges.size()); }
};

EPath vertex_path(int v);
/* Builds a path from edges in composition order; validates adjacency
 * (NotComposable). Nonempty paths derive r_vertex from the first edge. */
EPath make_path(const WeightedGraph& g, const std::vector<int>& edges);

int path_r(const WeightedGraph& g, const EPath& mu);
int path_s(const WeightedGraph& g, const EPath& mu);
mpz_class path_weight(const WeightedGraph& g, const EPath& mu);
/* Concatenation mu.nu; requires s(mu) = r(nu) (NotComposable). */
EPath path_concat(const WeightedGraph& g, const EPath& mu, const EPath& nu);
std::string path_label(const WeightedGraph& g, const EPath& mu);

/* A path in the augmented graph F in Theta-coordinates: the base path in E
 * together with an offset 0 <= m < p(base). */
struct OdometerPath {
    EPath base;
    mpz_class m = 0;
    auto operator<=>(const OdometerPath&) const = default;
};

/* Validates the offset range. */
OdometerPath odometer_path(const WeightedGraph& g, const EPath& base,
                           const mpz_class& m);

/* The generator action of (v, a) in E^0 x Z on xi = (mu, m): requires
 * v = r(mu) (VertexMismatch); returns ((mu, (a+m) mod p(mu)), carry) with
 * carry = floor((a+m)/p(mu)), an element of {s(mu)} x Z. */
std::pair<OdometerPath, mpz_class> act(const WeightedGraph& g, int v,
                                       const mpz_class& a,
                                       const OdometerPath& xi);

/* Left action on a composable tuple, threading carries left to right;
 * returns the acted tuple and the final carry. Throws NotComposable. */
std::pair<std::vector<OdometerPath>, mpz_class> act_on_path_tuple(
    const WeightedGraph& g, const mpz_class& a,
    const std::vector<OdometerPath>& xs);

/* Closed-form order and multiplicities for a composable tuple of q+1 paths:
 * O = p(xi_0 ... xi_q); rho has q+1 entries, 1 except the last, which is
 * p(base of xi_q) (for a single path the i = 0 case applies and rho = [1]). */
struct OrderRho {
    mpz_class O;
    std::vector<mpz_class> rho;
};
OrderRho order_and_rho(const WeightedGraph& g,
                       const std::vector<OdometerPath>& xs);

/* M(v,e) = p(e)[v = r(e)] - [v = s(e)], rows E^0, columns E^1. */
IntMatrix matrix_M(const WeightedGraph& g);

/* Graph homology of E with incidence boundary de = s(e) - r(e):
 * H0 = coker, H1 = ker (free). */
std::pair<AbelianGroup, AbelianGroup> graph_homology(const WeightedGraph& g);

enum class TriState { yes, no, unknown };

/* Closed-form homology of the graph-of-odometers pair. H1 is reported as
 * short-exact-sequence data 0 -> H1(E) -> H1 -> coker M -> 0 and resolved
 * only when coker M is free (the extension splits). */
struct OdometerReport {
    AbelianGroup H0, H2;
    AbelianGroup H1_graph, coker_M;
    TriState split = TriState::unknown;
    std::optional<AbelianGroup> H1; /* present iff split == yes */
    bool gcd_criterion = false;     /* gcd of parallel-path weight gaps = 1 */
    int gcd_established_at = -1;    /* smallest search length reaching 1 */
    std::string to_string() const;
};
OdometerReport odometer_homology(const WeightedGraph& g, int L = 6,
                                 long cap = kDefaultEnumerationCap);

/* All paths of length <= L (vertices first, then by length, lexicographic in
 * edge indices), and all composable k-tuples of such paths with total length
 * <= L, in lexicographic order. The degree-0 basis (k = 0) is the vertices,
 * wrapped as singleton vertex paths. Throw CapExceeded beyond the cap. */
std::vector<EPath> bounded_paths(const WeightedGraph& g, int L,
                                 long cap = kDefaultEnumerationCap);
std::vector<std::vector<EPath>> bounded_path_tuples(
    const WeightedGraph& g, int k, int L, long cap = kDefaultEnumerationCap);

/* The matrix of Delta-tilde_{1,q} from (q+1)-tuples to q-tuples on the
 * bounded bases:
 *   sum_{i=0}^{q} (-1)^i face_i + (-1)^{q+1} p(last component) face_{q+1}. */
IntMatrix delta_tilde(const WeightedGraph& g, int q, int L,
                      long cap = kDefaultEnumerationCap);

/* Verifies, for every path mu with 1 <= |mu| <= L, the span identity
 *   mu - sum_i p(mu^{[i,|mu|]}) mu^i + Dt(mu^{[0,|mu|-1]}, mu^{|mu|})
 *     in span{ Dt(alpha, beta) : |alpha beta| < |mu| }
 * by exact integer solve, and that im(Dt_{1,1}) meets ZE^1 trivially on the
 * bounded span. */
struct DecompositionReport {
    bool ok = true;
    std::string witness;
};
DecompositionReport verify_decomposition(const WeightedGraph& g, int L,
                                         long cap = kDefaultEnumerationCap);

} // namespace mpx
