#pragma once
#include <map>
#include <string>
#include <vector>

#include "mpx/abelian.hpp"
#include "mpx/matched_pair.hpp"

namespace mpx {

/* A chain complex of free Z-modules with named bases, materialised in degrees
 * 0..max_degree+1; boundary(k) maps degree-(k+1) chains to degree-k chains and
 * exists for k = 0..max_degree. d.d = 0 is asserted on construction. */
struct ChainComplex {
    int max_degree = 0;
    std::vector<std::vector<std::string>> bases; /* degrees 0..max_degree+1 */
    std::vector<IntMatrix> boundaries;           /* boundaries[k]: k+1 -> k */

    int dim(int k) const;
    const IntMatrix& boundary(int k) const; /* throws DegreeNotMaterialised */
};

/* Homology at degree k (0 <= k <= max_degree). */
HomologyData homology(const ChainComplex& cx, int k);

/* --- categorical complex of a finite category (Def. of C_k(C)) --- */

ChainComplex categorical_complex(const FiniteCategory& C, int K,
                                 long cap = kDefaultEnumerationCap);

/* Individual simplicial operators on the categorical complex, exposed for
 * property testing. Faces map C_k -> C_{k-1} (k >= 1, 0 <= i <= k);
 * degeneracies map C_k -> C_{k+1} (0 <= i <= k). */
IntMatrix categorical_face(const FiniteCategory& C, int k, int i,
                           long cap = kDefaultEnumerationCap);
IntMatrix categorical_degeneracy(const FiniteCategory& C, int k, int i,
                                 long cap = kDefaultEnumerationCap);

/* --- matched double complex of a matched pair --- */

/* Basis element of C_{p,q} = Z(C^p * D^q): a composable C-tuple over a
 * composable D-tuple with s(c-part) = r(d-part). */
struct BiElement {
    Tuple c, d;
    auto operator<=>(const BiElement&) const = default;
};

/* Builds a well-formed basis element from raw tuples; junction_obj is used
 * only when both tuples are empty. */
BiElement make_bielement(const MatchedPair& mp, std::vector<int> cs,
                         std::vector<int> ds, int junction_obj);

/* Elementwise simplicial operators (no signs attached), used to assemble the
 * chain maps; indices follow the same conventions as the matrix versions
 * below. */
BiElement bi_face_horizontal(const MatchedPair& mp, const BiElement& el, int i);
BiElement bi_face_vertical(const MatchedPair& mp, const BiElement& el, int j);
BiElement bi_degeneracy_horizontal(const MatchedPair& mp, const BiElement& el, int i);
BiElement bi_degeneracy_vertical(const MatchedPair& mp, const BiElement& el, int j);

std::string bielement_label(const MatchedPair& mp, const BiElement& el);

/* The C^p * D^q basis in canonical order (c-tuple major). */
std::vector<BiElement> bidegree_basis(const MatchedPair& mp, int p, int q,
                                      long cap = kDefaultEnumerationCap);

/* Faces/degeneracies of the double complex, by source bidegree (p,q).
 * Horizontal: C_{p,q} -> C_{p-1,q} (0 <= i <= p), i = p is the action face
 * applying act_L of the last C-entry to the D-tuple. Vertical:
 * C_{p,q} -> C_{p,q-1} (0 <= j <= q) carrying the sign (-1)^p; j = 0 is the
 * action face applying act_R of the whole C-tuple to the first D-entry.
 * Degeneracies insert an identity after position i/j; vertical ones also
 * carry (-1)^p. */
IntMatrix horizontal_face(const MatchedPair& mp, int p, int q, int i,
                          long cap = kDefaultEnumerationCap);
IntMatrix vertical_face(const MatchedPair& mp, int p, int q, int j,
                        long cap = kDefaultEnumerationCap);
IntMatrix horizontal_degeneracy(const MatchedPair& mp, int p, int q, int i,
                                long cap = kDefaultEnumerationCap);
IntMatrix vertical_degeneracy(const MatchedPair& mp, int p, int q, int j,
                              long cap = kDefaultEnumerationCap);

struct DoubleComplex {
    MatchedPair mp;
    int max_total_degree = 0;
    /* bases for p+q <= max_total_degree+1 */
    std::map<std::pair<int, int>, std::vector<BiElement>> bases;
    /* d_h[(p,q)]: C_{p+1,q} -> C_{p,q};  d_v[(p,q)]: C_{p,q+1} -> C_{p,q}
       (the vertical differential includes the (-1)^p sign). */
    std::map<std::pair<int, int>, IntMatrix> d_h, d_v;

    int dim(int p, int q) const;
    const std::vector<BiElement>& basis(int p, int q) const;
};

/* Builds bases for p+q <= K+1 and differentials into all (p,q) with
 * p+q <= K; verifies d_h d_h = 0, d_v d_v = 0 and d_h d_v = -d_v d_h. */
DoubleComplex matched_double_complex(const MatchedPair& mp, int K,
                                     long cap = kDefaultEnumerationCap);

/* Diagonal complex: degree k basis is C_{k,k}; the boundary is the
 * alternating sum of the diagonal faces del^{h,i} o del^{v,i} (with the
 * vertical faces taken unsigned). */
ChainComplex diagonal_complex(const MatchedPair& mp, int K,
                              long cap = kDefaultEnumerationCap);

/* Total complex: degree k is the direct sum of C_{p,q} with p+q = k, blocks
 * ordered by increasing p; d = d_v + d_h. Requires K <= dc.max_total_degree. */
ChainComplex total_complex(const DoubleComplex& dc, int K);

} // namespace mpx
