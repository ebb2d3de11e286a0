#pragma once
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpx/category.hpp"

namespace mpx {

/* A validated matched pair (C, D, act_L, act_R): C and D share the ordered
 * object list; act_L(c,d) = c ⊳ d in D and act_R(c,d) = c ▷ d in C are defined
 * exactly on composable pairs s(c) = r(d) and satisfy the typing rules, the
 * action laws and MP1-MP3. */
class MatchedPair {
public:
    const FiniteCategory& C() const { return C_; }
    const FiniteCategory& D() const { return D_; }

    bool defined(int c, int d) const { return C_.src(c) == D_.dst(d); }
    int act_L(int c, int d) const;
    int act_R(int c, int d) const;

    /* c ⊳ (d_1,...,d_q) with running restrictions; returns the new d-tuple and
     * the residual c ▷ (d_1 ... d_q). */
    std::pair<std::vector<int>, int> act_on_dtuple(int c, const std::vector<int>& ds) const;
    /* (c_1,...,c_p) ▷ d componentwise; returns the residual (c_1...c_p) ⊳ d and
     * the new c-tuple. */
    std::pair<int, std::vector<int>> act_on_ctuple(const std::vector<int>& cs, int d) const;

    /* Full crossing of a C^m tuple over a D^n tuple (the map bowtie_{m,n});
     * returns (d-tuple, c-tuple). */
    std::pair<std::vector<int>, std::vector<int>> cross_tuples(
        const std::vector<int>& cs, const std::vector<int>& ds) const;

    /* Materialised action tables of C^m on D^n, memoised per (m, n). */
    struct TupleActionTable {
        int m, n;
        /* key: (c-tuple, d-tuple), value: (act_L result in D^n, act_R result in C^m) */
        std::map<std::pair<std::vector<int>, std::vector<int>>,
                 std::pair<std::vector<int>, std::vector<int>>>
            entries;
    };
    const TupleActionTable& tuple_action(int m, int n, long cap = kDefaultEnumerationCap) const;

    friend MatchedPair validate_matched_pair(const FiniteCategory& C,
                                             const FiniteCategory& D,
                                             const std::vector<int>& act_L_table,
                                             const std::vector<int>& act_R_table);

private:
    FiniteCategory C_, D_;
    std::vector<int> actL_, actR_; // |C| x |D| flat tables, -1 off-domain
    mutable std::mutex memo_mutex_;
    mutable std::map<std::pair<int, int>, TupleActionTable> tuple_tables_;

public:
    MatchedPair(const MatchedPair& o)
        : C_(o.C_), D_(o.D_), actL_(o.actL_), actR_(o.actR_) {}
    MatchedPair& operator=(const MatchedPair& o) {
        C_ = o.C_; D_ = o.D_; actL_ = o.actL_; actR_ = o.actR_;
        return *this;
    }
    MatchedPair() = default;
};

/* Tables are flat |C|*|D| arrays indexed c*|D|+d with -1 off the domain. */
MatchedPair validate_matched_pair(const FiniteCategory& C, const FiniteCategory& D,
                                  const std::vector<int>& act_L_table,
                                  const std::vector<int>& act_R_table);

/* Convenience: build the tables from callables (c, d) -> morphism index. */
MatchedPair make_matched_pair(const FiniteCategory& C, const FiniteCategory& D,
                              const std::function<int(int, int)>& act_L,
                              const std::function<int(int, int)>& act_R);

/* The trivial matched pair (C, C^0): D is the discrete category on the objects
 * of C, with c ⊳ s(c) = r(c) and c ▷ s(c) = c. */
MatchedPair trivial_pair(const FiniteCategory& C);

/* The map bowtie : C * D -> D * C, c ⋈ d = (c ⊳ d, c ▷ d), as a table. */
struct FactorisationRule {
    FiniteCategory C, D;
    /* key (c, d) over composable pairs, value (d', c') */
    std::map<std::pair<int, int>, std::pair<int, int>> table;
};

FactorisationRule to_factorisation_rule(const MatchedPair& mp);
/* Validates FR1 (range/source matching) and FR2 (the composition diagrams and
 * unit conditions), then re-validates the matched pair axioms. */
MatchedPair from_factorisation_rule(const FactorisationRule& fr);

/* Zappa-Szep product: morphisms are composable pairs (d, c), composition
 * (d1,c1)(d2,c2) = (d1 (c1 ⊳ d2), (c1 ▷ d2) c2). */
struct ZappaSzep {
    FiniteCategory cat;
    std::vector<int> embed_C; /* morphism of C -> morphism (r(c), c) of cat */
    std::vector<int> embed_D; /* morphism of D -> morphism (d, s(d)) of cat */
    std::vector<std::pair<int, int>> pair_of; /* cat morphism -> (d, c) */
    int pair_index(int d, int c) const;
};

ZappaSzep zappa_szep(const MatchedPair& mp);

/* Derives a matched pair from a strict factorisation system: every morphism of
 * A must factor uniquely as d . c with d from d_sub and c from c_sub (both wide
 * subcategories given as morphism index lists containing all identities). */
MatchedPair from_strict_factorisation(const FiniteCategory& A,
                                      const std::vector<int>& c_sub,
                                      const std::vector<int>& d_sub);

/* Model pair (E_n, F_n) over the staircase X_n = {(p,q) : p+q <= n} together
 * with the poset category Gamma_n and the isomorphism with the product. */
struct ModelPair {
    int n = 0;
    MatchedPair mp;
    ZappaSzep zs;
    FiniteCategory gamma;
    std::vector<int> zs_to_gamma; /* morphism bijection zs.cat -> gamma */

    int object_of(int p, int q) const; /* object index of (p,q) */
    int e_path(int p_lo, int p_hi, int q) const; /* morphism of C = E_n* */
    int f_path(int q_lo, int q_hi, int p) const; /* morphism of D = F_n* */
};

ModelPair model_pair(int n);

/* A matched-pair morphism (h^L, h^R) : source -> target given by per-morphism
 * image tables; verified to consist of functors intertwining the actions. */
struct MatchedPairMorphism {
    std::vector<int> hL; /* morphism of source C -> morphism of target C */
    std::vector<int> hR;
};

/* Unique morphism (E_n, F_n) -> (C, D) with prescribed generator images:
 * seeds[k] = (d_k, c_k) as a zs.cat morphism index, mapped to the staircase
 * diagonal e_{k,n-1-k} -> c_k, f_{k,n-1-k} -> d_k; requires seeds composable
 * and model.n = seeds.size() >= 1. */
MatchedPairMorphism induced_morphism_from_seeds(const MatchedPair& mp,
                                                const ModelPair& model,
                                                const ZappaSzep& zs,
                                                const std::vector<int>& seeds);

/* Morphism h_gamma : (E_{2k}, F_{2k}) -> (C, D) induced by a composable
 * k-tuple gamma in the Zappa-Szep product; the tuple is padded with k
 * identities at s(gamma). Requires model.n = 2k, k >= 1. */
MatchedPairMorphism induced_morphism(const MatchedPair& mp, const ModelPair& model,
                                     const ZappaSzep& zs, const std::vector<int>& gamma);

struct CancellativityReport {
    bool left_cancellative = true;
    std::string witness; /* empty when cancellative */
};
CancellativityReport is_left_cancellative(const MatchedPair& mp);

} // namespace mpx
