#include "mpx/matched_pair.hpp"

#include <algorithm>
#include <set>

namespace mpx {

int MatchedPair::act_L(int c, int d) const {
    int r = actL_[static_cast<size_t>(c) * D_.num_morphisms() + d];
    if (r < 0)
        throw Error("ActionIllTyped", "act_L(" + C_.morphism_names()[c] + ", " +
                                          D_.morphism_names()[d] + ") is undefined");
    return r;
}

int MatchedPair::act_R(int c, int d) const {
    int r = actR_[static_cast<size_t>(c) * D_.num_morphisms() + d];
    if (r < 0)
        throw Error("ActionIllTyped", "act_R(" + C_.morphism_names()[c] + ", " +
                                          D_.morphism_names()[d] + ") is undefined");
    return r;
}

std::pair<std::vector<int>, int> MatchedPair::act_on_dtuple(
    int c, const std::vector<int>& ds) const {
    std::vector<int> out;
    out.reserve(ds.size());
    int cur = c;
    for (int d : ds) {
        out.push_back(act_L(cur, d));
        cur = act_R(cur, d);
    }
    return {out, cur};
}

std::pair<int, std::vector<int>> MatchedPair::act_on_ctuple(
    const std::vector<int>& cs, int d) const {
    std::vector<int> out(cs.size(), -1);
    int cur = d;
    for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i) {
        out[i] = act_R(cs[i], cur);
        cur = act_L(cs[i], cur);
    }
    return {cur, out};
}

std::pair<std::vector<int>, std::vector<int>> MatchedPair::cross_tuples(
    const std::vector<int>& cs, const std::vector<int>& ds) const {
    std::vector<int> new_cs(cs.size(), -1);
    std::vector<int> cur_ds = ds;
    for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i) {
        auto [nds, res_c] = act_on_dtuple(cs[i], cur_ds);
        cur_ds = std::move(nds);
        new_cs[i] = res_c;
    }
    return {cur_ds, new_cs};
}

const MatchedPair::TupleActionTable& MatchedPair::tuple_action(int m, int n,
                                                               long cap) const {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto key = std::make_pair(m, n);
    auto it = tuple_tables_.find(key);
    if (it != tuple_tables_.end()) return it->second;

    TupleActionTable tab;
    tab.m = m;
    tab.n = n;
    auto cts = composable_tuples(C_, m, cap);
    auto dts = composable_tuples(D_, n, cap);
    long count = 0;
    for (const auto& ct : cts)
        for (const auto& dt : dts) {
            if (tuple_s(C_, ct) != tuple_r(D_, dt)) continue;
            if (++count > cap)
                throw Error("DegreeTooLarge", "tuple_action table exceeds cap");
            tab.entries[{ct.ms, dt.ms}] = cross_tuples(ct.ms, dt.ms);
        }
    return tuple_tables_.emplace(key, std::move(tab)).first->second;
}

MatchedPair validate_matched_pair(const FiniteCategory& C, const FiniteCategory& D,
                                  const std::vector<int>& act_L_table,
                                  const std::vector<int>& act_R_table) {
    if (C.object_names() != D.object_names())
        throw Error("ObjectMismatch", "C and D must share the ordered object list");
    const size_t expected =
        static_cast<size_t>(C.num_morphisms()) * D.num_morphisms();
    if (act_L_table.size() != expected || act_R_table.size() != expected)
        throw Error("ShapeMismatch", "action tables have the wrong size");

    MatchedPair mp;
    mp.C_ = C;
    mp.D_ = D;
    mp.actL_ = act_L_table;
    mp.actR_ = act_R_table;

    auto cname = [&](int c) { return C.morphism_names()[c]; };
    auto dname = [&](int d) { return D.morphism_names()[d]; };

    for (int c = 0; c < C.num_morphisms(); ++c)
        for (int d = 0; d < D.num_morphisms(); ++d) {
            size_t idx = static_cast<size_t>(c) * D.num_morphisms() + d;
            int l = act_L_table[idx], r = act_R_table[idx];
            if (C.src(c) != D.dst(d)) {
                if (l >= 0 || r >= 0)
                    throw Error("ActionIllTyped",
                                "action defined on non-composable (" + cname(c) + ", " +
                                    dname(d) + ")");
                continue;
            }
            if (l < 0 || r < 0)
                throw Error("ActionIllTyped", "action missing on composable (" +
                                                  cname(c) + ", " + dname(d) + ")");
            if (D.dst(l) != C.dst(c))
                throw Error("ActionIllTyped",
                            "r(" + cname(c) + " |> " + dname(d) + ") != r(" + cname(c) + ")");
            if (C.src(r) != D.src(d))
                throw Error("ActionIllTyped",
                            "s(" + cname(c) + " |< " + dname(d) + ") != s(" + dname(d) + ")");
            if (D.src(l) != C.dst(r))
                throw Error("MP1Violation",
                            "s(c |> d) != r(c |< d) at (" + cname(c) + ", " + dname(d) + ")");
        }

    auto L = [&](int c, int d) { return mp.act_L(c, d); };
    auto R = [&](int c, int d) { return mp.act_R(c, d); };

    /* Unit laws of the two actions (including the identity-image laws forced by
       the Zappa-Szep unit laws). */
    for (int d = 0; d < D.num_morphisms(); ++d) {
        int idr = C.identity_of(D.dst(d));
        if (L(idr, d) != d || R(idr, d) != C.identity_of(D.src(d)))
            throw Error("NotAnAction", "identity of r(" + dname(d) +
                                           ") does not act trivially on it");
    }
    for (int c = 0; c < C.num_morphisms(); ++c) {
        int ids = D.identity_of(C.src(c));
        if (R(c, ids) != c || L(c, ids) != D.identity_of(C.dst(c)))
            throw Error("NotAnAction", "identity of s(" + cname(c) +
                                           ") does not act trivially on it");
    }
    /* Composition laws of the actions. */
    for (int c1 = 0; c1 < C.num_morphisms(); ++c1)
        for (int c2 = 0; c2 < C.num_morphisms(); ++c2) {
            if (C.src(c1) != C.dst(c2)) continue;
            int c12 = C.compose(c1, c2);
            for (int d = 0; d < D.num_morphisms(); ++d) {
                if (C.src(c2) != D.dst(d)) continue;
                if (L(c12, d) != L(c1, L(c2, d)))
                    throw Error("NotAnAction", "(c1 c2) |> d != c1 |> (c2 |> d) at (" +
                                                   cname(c1) + ", " + cname(c2) + ", " +
                                                   dname(d) + ")");
                /* MP3 */
                if (R(c12, d) != C.compose(R(c1, L(c2, d)), R(c2, d)))
                    throw Error("MP3Violation", "witness (" + cname(c1) + ", " +
                                                    cname(c2) + ", " + dname(d) + ")");
            }
        }
    for (int d1 = 0; d1 < D.num_morphisms(); ++d1)
        for (int d2 = 0; d2 < D.num_morphisms(); ++d2) {
            if (D.src(d1) != D.dst(d2)) continue;
            int d12 = D.compose(d1, d2);
            for (int c = 0; c < C.num_morphisms(); ++c) {
                if (C.src(c) != D.dst(d1)) continue;
                if (R(c, d12) != R(R(c, d1), d2))
                    throw Error("NotAnAction", "c |< (d1 d2) != (c |< d1) |< d2 at (" +
                                                   cname(c) + ", " + dname(d1) + ", " +
                                                   dname(d2) + ")");
                /* MP2 */
                if (L(c, d12) != D.compose(L(c, d1), L(R(c, d1), d2)))
                    throw Error("MP2Violation", "witness (" + cname(c) + ", " +
                                                    dname(d1) + ", " + dname(d2) + ")");
            }
        }
    return mp;
}

MatchedPair make_matched_pair(const FiniteCategory& C, const FiniteCategory& D,
                              const std::function<int(int, int)>& act_L,
                              const std::function<int(int, int)>& act_R) {
    std::vector<int> tl(static_cast<size_t>(C.num_morphisms()) * D.num_morphisms(), -1);
    std::vector<int> tr = tl;
    for (int c = 0; c < C.num_morphisms(); ++c)
        for (int d = 0; d < D.num_morphisms(); ++d) {
            if (C.src(c) != D.dst(d)) continue;
            size_t idx = static_cast<size_t>(c) * D.num_morphisms() + d;
            tl[idx] = act_L(c, d);
            tr[idx] = act_R(c, d);
        }
    return validate_matched_pair(C, D, tl, tr);
}

MatchedPair trivial_pair(const FiniteCategory& C) {
    FiniteCategory D = discrete_category(C.object_names());
    /* In the discrete category the identity of object x is morphism x. */
    return make_matched_pair(
        C, D, [&](int c, int) { return C.dst(c); }, [&](int c, int) { return c; });
}

FactorisationRule to_factorisation_rule(const MatchedPair& mp) {
    FactorisationRule fr;
    fr.C = mp.C();
    fr.D = mp.D();
    for (int c = 0; c < fr.C.num_morphisms(); ++c)
        for (int d = 0; d < fr.D.num_morphisms(); ++d)
            if (mp.defined(c, d)) fr.table[{c, d}] = {mp.act_L(c, d), mp.act_R(c, d)};
    return fr;
}

MatchedPair from_factorisation_rule(const FactorisationRule& fr) {
    const FiniteCategory &C = fr.C, &D = fr.D;
    auto lookup = [&](int c, int d) -> std::pair<int, int> {
        auto it = fr.table.find({c, d});
        if (it == fr.table.end())
            throw Error("FR1Violation", "factorisation rule misses composable pair (" +
                                            C.morphism_names()[c] + ", " +
                                            D.morphism_names()[d] + ")");
        return it->second;
    };
    /* FR1: range/source matching. */
    for (const auto& [key, val] : fr.table) {
        auto [c, d] = key;
        auto [dp, cp] = val;
        if (C.src(c) != D.dst(d))
            throw Error("FR1Violation", "rule defined on non-composable pair");
        if (D.dst(dp) != C.dst(c) || C.src(cp) != D.src(d) || D.src(dp) != C.dst(cp))
            throw Error("FR1Violation", "r/s matching fails at (" +
                                            C.morphism_names()[c] + ", " +
                                            D.morphism_names()[d] + ")");
    }
    /* FR2 unit conditions. */
    for (int c = 0; c < C.num_morphisms(); ++c) {
        auto [dp, cp] = lookup(c, D.identity_of(C.src(c)));
        if (dp != D.identity_of(C.dst(c)) || cp != c)
            throw Error("FR2Violation",
                        "unit diagram fails at c = " + C.morphism_names()[c]);
    }
    for (int d = 0; d < D.num_morphisms(); ++d) {
        auto [dp, cp] = lookup(C.identity_of(D.dst(d)), d);
        if (dp != d || cp != C.identity_of(D.src(d)))
            throw Error("FR2Violation",
                        "unit diagram fails at d = " + D.morphism_names()[d]);
    }
    /* FR2 composition diagrams. */
    for (int c1 = 0; c1 < C.num_morphisms(); ++c1)
        for (int c2 = 0; c2 < C.num_morphisms(); ++c2) {
            if (C.src(c1) != C.dst(c2)) continue;
            for (int d = 0; d < D.num_morphisms(); ++d) {
                if (C.src(c2) != D.dst(d)) continue;
                auto [d2p, c2p] = lookup(c2, d);
                auto [d1p, c1p] = lookup(c1, d2p);
                auto [dp, cp] = lookup(C.compose(c1, c2), d);
                if (dp != d1p || cp != C.compose(c1p, c2p))
                    throw Error("FR2Violation", "composition diagram (mu_C) fails at (" +
                                                    C.morphism_names()[c1] + ", " +
                                                    C.morphism_names()[c2] + ", " +
                                                    D.morphism_names()[d] + ")");
            }
        }
    for (int c = 0; c < C.num_morphisms(); ++c)
        for (int d1 = 0; d1 < D.num_morphisms(); ++d1) {
            if (C.src(c) != D.dst(d1)) continue;
            for (int d2 = 0; d2 < D.num_morphisms(); ++d2) {
                if (D.src(d1) != D.dst(d2)) continue;
                auto [d1p, c1p] = lookup(c, d1);
                auto [d2p, c2p] = lookup(c1p, d2);
                auto [dp, cp] = lookup(c, D.compose(d1, d2));
                if (dp != D.compose(d1p, d2p) || cp != c2p)
                    throw Error("FR2Violation", "composition diagram (mu_D) fails at (" +
                                                    C.morphism_names()[c] + ", " +
                                                    D.morphism_names()[d1] + ", " +
                                                    D.morphism_names()[d2] + ")");
            }
        }
    std::vector<int> tl(static_cast<size_t>(C.num_morphisms()) * D.num_morphisms(), -1);
    std::vector<int> tr = tl;
    for (const auto& [key, val] : fr.table) {
        size_t idx = static_cast<size_t>(key.first) * D.num_morphisms() + key.second;
        tl[idx] = val.first;
        tr[idx] = val.second;
    }
    return validate_matched_pair(C, D, tl, tr);
}

int ZappaSzep::pair_index(int d, int c) const {
    for (int i = 0; i < static_cast<int>(pair_of.size()); ++i)
        if (pair_of[i] == std::make_pair(d, c)) return i;
    throw Error("UnknownMorphism", "pair (d, c) is not composable in the product");
}

ZappaSzep zappa_szep(const MatchedPair& mp) {
    const FiniteCategory &C = mp.C(), &D = mp.D();
    ZappaSzep zs;
    RawCategory raw;
    raw.objects = C.object_names();
    auto name = [&](int d, int c) {
        return D.morphism_names()[d] + "|" + C.morphism_names()[c];
    };
    std::map<std::pair<int, int>, int> index;
    for (int d = 0; d < D.num_morphisms(); ++d)
        for (int c = 0; c < C.num_morphisms(); ++c) {
            if (D.src(d) != C.dst(c)) continue;
            index[{d, c}] = static_cast<int>(zs.pair_of.size());
            zs.pair_of.emplace_back(d, c);
            raw.morphisms.push_back({name(d, c), C.object_names()[C.src(c)],
                                     C.object_names()[D.dst(d)]});
        }
    for (int x = 0; x < C.num_objects(); ++x)
        raw.identities[C.object_names()[x]] = name(D.identity_of(x), C.identity_of(x));
    for (const auto& [p1, i1] : index)
        for (const auto& [p2, i2] : index) {
            auto [d1, c1] = p1;
            auto [d2, c2] = p2;
            if (C.src(c1) != D.dst(d2)) continue; /* s(d1,c1) = r(d2,c2) */
            int dl = D.compose(d1, mp.act_L(c1, d2));
            int cr = C.compose(mp.act_R(c1, d2), c2);
            raw.compose.push_back({name(d1, c1), name(d2, c2), name(dl, cr)});
        }
    zs.cat = validate_category(raw);
    /* The construction above lists morphisms in the validated order. */
    zs.embed_C.assign(C.num_morphisms(), -1);
    for (int c = 0; c < C.num_morphisms(); ++c)
        zs.embed_C[c] = index.at({D.identity_of(C.dst(c)), c});
    zs.embed_D.assign(D.num_morphisms(), -1);
    for (int d = 0; d < D.num_morphisms(); ++d)
        zs.embed_D[d] = index.at({d, C.identity_of(D.src(d))});
    /* pair_of must follow the category's morphism order: rebuild it to match. */
    std::vector<std::pair<int, int>> ordered(zs.cat.num_morphisms());
    for (const auto& [p, i] : index)
        ordered[zs.cat.morphism_index(name(p.first, p.second))] = p;
    /* remap embeddings into category indices */
    for (int c = 0; c < C.num_morphisms(); ++c) {
        auto [d0, c0] = zs.pair_of[zs.embed_C[c]];
        zs.embed_C[c] = zs.cat.morphism_index(name(d0, c0));
    }
    for (int d = 0; d < D.num_morphisms(); ++d) {
        auto [d0, c0] = zs.pair_of[zs.embed_D[d]];
        zs.embed_D[d] = zs.cat.morphism_index(name(d0, c0));
    }
    zs.pair_of = std::move(ordered);
    return zs;
}

namespace {

FiniteCategory wide_subcategory(const FiniteCategory& A, const std::vector<int>& sub,
                                std::vector<int>& to_sub) {
    RawCategory raw;
    raw.objects = A.object_names();
    std::set<int> members(sub.begin(), sub.end());
    for (int x = 0; x < A.num_objects(); ++x) {
        if (!members.count(A.identity_of(x)))
            throw Error("FactorisationFailed",
                        "subcategory is not wide: missing identity of " +
                            A.object_names()[x]);
        raw.identities[A.object_names()[x]] = A.morphism_names()[A.identity_of(x)];
    }
    to_sub.assign(A.num_morphisms(), -1);
    for (size_t i = 0; i < sub.size(); ++i) {
        to_sub[sub[i]] = static_cast<int>(i);
        raw.morphisms.push_back({A.morphism_names()[sub[i]],
                                 A.object_names()[A.src(sub[i])],
                                 A.object_names()[A.dst(sub[i])]});
    }
    for (int f : sub)
        for (int g : sub) {
            if (A.src(f) != A.dst(g)) continue;
            int fg = A.compose(f, g);
            if (!members.count(fg))
                throw Error("FactorisationFailed",
                            "subcategory not closed under composition at (" +
                                A.morphism_names()[f] + ", " + A.morphism_names()[g] + ")");
            raw.compose.push_back({A.morphism_names()[f], A.morphism_names()[g],
                                   A.morphism_names()[fg]});
        }
    return validate_category(raw);
}

} // namespace

MatchedPair from_strict_factorisation(const FiniteCategory& A,
                                      const std::vector<int>& c_sub,
                                      const std::vector<int>& d_sub) {
    std::vector<int> to_c, to_d;
    FiniteCategory C = wide_subcategory(A, c_sub, to_c);
    FiniteCategory D = wide_subcategory(A, d_sub, to_d);
    /* Unique factorisation m = d . c of every morphism of A. */
    std::map<int, std::pair<int, int>> factor; /* A morphism -> (d, c) in A indices */
    for (int m = 0; m < A.num_morphisms(); ++m) {
        int count = 0;
        for (int d : d_sub)
            for (int c : c_sub) {
                if (A.src(d) != A.dst(c)) continue;
                if (A.compose(d, c) != m) continue;
                ++count;
                factor[m] = {d, c};
            }
        if (count != 1)
            throw Error(count == 0 ? "FactorisationFailed" : "FactorisationAmbiguous",
                        "morphism '" + A.morphism_names()[m] + "' has " +
                            std::to_string(count) + " factorisations");
    }
    return make_matched_pair(
        C, D,
        [&](int c, int d) {
            return to_d[factor.at(A.compose(c_sub[c], d_sub[d])).first];
        },
        [&](int c, int d) {
            return to_c[factor.at(A.compose(c_sub[c], d_sub[d])).second];
        });
}

int ModelPair::object_of(int p, int q) const {
    return mp.C().object_index("(" + std::to_string(p) + "," + std::to_string(q) + ")");
}

int ModelPair::e_path(int p_lo, int p_hi, int q) const {
    const FiniteCategory& C = mp.C();
    int m = C.identity_of(object_of(p_lo, q));
    for (int i = p_lo; i < p_hi; ++i)
        m = C.compose(m, C.morphism_index("e(" + std::to_string(i) + "," +
                                          std::to_string(q) + ")"));
    return m;
}

int ModelPair::f_path(int q_lo, int q_hi, int p) const {
    const FiniteCategory& D = mp.D();
    int m = D.identity_of(object_of(p, q_hi));
    for (int j = q_hi - 1; j >= q_lo; --j)
        m = D.compose(m, D.morphism_index("f(" + std::to_string(p) + "," +
                                          std::to_string(j) + ")"));
    return m;
}

ModelPair model_pair(int n) {
    if (n < 0) throw Error("ShapeMismatch", "model pair size must be nonnegative");
    ModelPair model;
    model.n = n;
    auto oname = [](int p, int q) {
        return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    };
    DirectedGraph eg, fg;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n - p; ++q) {
            eg.vertices.push_back(oname(p, q));
            fg.vertices.push_back(oname(p, q));
        }
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n - p; ++q) {
            if (p + q >= n) continue;
            /* e_{p,q}: r = (p,q), s = (p+1,q); as a morphism src -> dst. */
            eg.edges.push_back({"e(" + std::to_string(p) + "," + std::to_string(q) + ")",
                                oname(p + 1, q), oname(p, q)});
            /* f_{p,q}: s = (p,q), r = (p,q+1). */
            fg.edges.push_back({"f(" + std::to_string(p) + "," + std::to_string(q) + ")",
                                oname(p, q), oname(p, q + 1)});
        }
    FiniteCategory C = path_category(eg), D = path_category(fg);

    /* Coordinates of each object. */
    std::vector<std::pair<int, int>> coord(C.num_objects());
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n - p; ++q) coord[C.object_index(oname(p, q))] = {p, q};

    /* A morphism of C runs (p,q) <- (p',q); of D runs (p,q) <- (p,q'') with
       q'' <= q. The actions follow the unique factorisation in the poset
       Gamma_n: c |> d is the f-path up column p and c |< d the e-path along
       row q''. */
    model.mp = make_matched_pair(C, D,
        [&](int c, int d) {
            auto [p, q] = coord[C.dst(c)];
            auto [p2, q2] = coord[D.src(d)];
            (void)p2;
            /* f-path at column p from q2 up to q */
            int m = D.identity_of(D.object_index(oname(p, q)));
            for (int j = q - 1; j >= q2; --j)
                m = D.compose(m, D.morphism_index("f(" + std::to_string(p) + "," +
                                                  std::to_string(j) + ")"));
            return m;
        },
        [&](int c, int d) {
            auto [p, q] = coord[C.dst(c)];
            auto [pp, qq] = coord[C.src(c)];
            auto [p2, q2] = coord[D.src(d)];
            (void)qq;
            (void)p2;
            /* e-path at row q2 from pp down to p */
            int m = C.identity_of(C.object_index(oname(p, q2)));
            for (int i = p; i < pp; ++i)
                m = C.compose(m, C.morphism_index("e(" + std::to_string(i) + "," +
                                                  std::to_string(q2) + ")"));
            return m;
        });

    model.zs = zappa_szep(model.mp);

    /* Gamma_n: poset category on X_n with (a,b) iff a_L <= b_L and a_R >= b_R. */
    RawCategory raw;
    raw.objects = C.object_names();
    auto gname = [&](int a, int b) {
        return "g[" + C.object_names()[a] + ";" + C.object_names()[b] + "]";
    };
    std::vector<std::pair<int, int>> gm; /* (a = dst, b = src) */
    for (int a = 0; a < C.num_objects(); ++a)
        for (int b = 0; b < C.num_objects(); ++b) {
            if (coord[a].first <= coord[b].first && coord[a].second >= coord[b].second)
                gm.emplace_back(a, b);
        }
    for (auto [a, b] : gm)
        raw.morphisms.push_back({gname(a, b), C.object_names()[b], C.object_names()[a]});
    for (int x = 0; x < C.num_objects(); ++x)
        raw.identities[C.object_names()[x]] = gname(x, x);
    for (auto [a, b] : gm)
        for (auto [b2, c2] : gm)
            if (b == b2) raw.compose.push_back({gname(a, b), gname(b2, c2), gname(a, c2)});
    model.gamma = validate_category(raw);

    /* Isomorphism zs.cat -> gamma: (d, c) -> (r(d), s(c)). */
    model.zs_to_gamma.assign(model.zs.cat.num_morphisms(), -1);
    for (int m = 0; m < model.zs.cat.num_morphisms(); ++m) {
        auto [d, c] = model.zs.pair_of[m];
        model.zs_to_gamma[m] =
            model.gamma.morphism_index(gname(D.dst(d), C.src(c)));
    }
    return model;
}

MatchedPairMorphism induced_morphism_from_seeds(const MatchedPair& mp,
                                                const ModelPair& model,
                                                const ZappaSzep& zs,
                                                const std::vector<int>& gamma) {
    const int n = static_cast<int>(gamma.size());
    if (model.n != n)
        throw Error("ShapeMismatch", "model size must equal the tuple length");
    if (n == 0)
        throw Error("NotComposable",
                    "an empty tuple does not determine a base object");
    const FiniteCategory &C = mp.C(), &D = mp.D();
    const FiniteCategory &MC = model.mp.C(), &MD = model.mp.D();
    for (int i = 0; i + 1 < n; ++i)
        if (zs.cat.src(gamma[i]) != zs.cat.dst(gamma[i + 1]))
            throw Error("NotComposable", "gamma is not a composable tuple");

    /* Images c_{p,q}, d_{p,q} of the generators, p+q <= n-1. */
    std::vector<std::vector<int>> cimg(n, std::vector<int>(n, -1)),
        dimg(n, std::vector<int>(n, -1));
    for (int k = 0; k < n; ++k) {
        auto [d, c] = zs.pair_of[gamma[k]];
        cimg[k][n - 1 - k] = c;
        dimg[k][n - 1 - k] = d;
    }
    for (int s = n - 2; s >= 0; --s)
        for (int p = 0; p <= s; ++p) {
            int q = s - p;
            int cu = cimg[p][q + 1], dr = dimg[p + 1][q];
            if (C.src(cu) != D.dst(dr))
                throw Error("NotComposable",
                            "induced morphism recursion hits a non-composable pair");
            dimg[p][q] = mp.act_L(cu, dr);
            cimg[p][q] = mp.act_R(cu, dr);
        }

    /* Object images, consistently across the staircase. */
    std::vector<int> oimg(MC.num_objects(), -1);
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n - p; ++q) {
            int x = model.object_of(p, q);
            if (p + q < n)
                oimg[x] = C.dst(cimg[p][q]);
            else if (p > 0)
                oimg[x] = C.src(cimg[p - 1][q]);
            else
                oimg[x] = D.dst(dimg[0][n - 1]);
        }

    MatchedPairMorphism h;
    h.hL.assign(MC.num_morphisms(), -1);
    h.hR.assign(MD.num_morphisms(), -1);
    auto coord_of = [&](int obj) {
        const std::string& s = MC.object_names()[obj];
        int comma = static_cast<int>(s.find(','));
        return std::make_pair(std::stoi(s.substr(1, comma - 1)),
                              std::stoi(s.substr(comma + 1, s.size() - comma - 2)));
    };
    for (int m = 0; m < MC.num_morphisms(); ++m) {
        auto [p, q] = coord_of(MC.dst(m));
        auto [pp, q2] = coord_of(MC.src(m));
        (void)q2;
        int img = C.identity_of(oimg[MC.dst(m)]);
        for (int i = p; i < pp; ++i) img = C.compose(img, cimg[i][q]);
        h.hL[m] = img;
    }
    for (int m = 0; m < MD.num_morphisms(); ++m) {
        auto [p, qhi] = coord_of(MD.dst(m));
        auto [p2, qlo] = coord_of(MD.src(m));
        (void)p2;
        int img = D.identity_of(oimg[MD.dst(m)]);
        for (int j = qhi - 1; j >= qlo; --j) img = D.compose(img, dimg[p][j]);
        h.hR[m] = img;
    }

    /* Verify: functors intertwining the actions. */
    for (int f = 0; f < MC.num_morphisms(); ++f)
        for (int g = 0; g < MC.num_morphisms(); ++g) {
            if (MC.src(f) != MC.dst(g)) continue;
            if (C.compose(h.hL[f], h.hL[g]) != h.hL[MC.compose(f, g)])
                throw Error("NotAFunctor", "h^L fails functoriality");
        }
    for (int f = 0; f < MD.num_morphisms(); ++f)
        for (int g = 0; g < MD.num_morphisms(); ++g) {
            if (MD.src(f) != MD.dst(g)) continue;
            if (D.compose(h.hR[f], h.hR[g]) != h.hR[MD.compose(f, g)])
                throw Error("NotAFunctor", "h^R fails functoriality");
        }
    for (int c = 0; c < MC.num_morphisms(); ++c)
        for (int d = 0; d < MD.num_morphisms(); ++d) {
            if (!model.mp.defined(c, d)) continue;
            if (mp.act_L(h.hL[c], h.hR[d]) != h.hR[model.mp.act_L(c, d)] ||
                mp.act_R(h.hL[c], h.hR[d]) != h.hL[model.mp.act_R(c, d)])
                throw Error("NotAFunctor", "h fails to intertwine the actions");
        }
    return h;
}

MatchedPairMorphism induced_morphism(const MatchedPair& mp, const ModelPair& model,
                                     const ZappaSzep& zs,
                                     const std::vector<int>& gamma) {
    const int k = static_cast<int>(gamma.size());
    if (k == 0)
        throw Error("NotComposable",
                    "an empty tuple does not determine a base object");
    if (model.n != 2 * k)
        throw Error("ShapeMismatch", "induced_morphism needs the model of size 2k");
    std::vector<int> seeds = gamma;
    int s_obj = zs.cat.src(gamma.back());
    seeds.insert(seeds.end(), static_cast<size_t>(k), zs.cat.identity_of(s_obj));
    return induced_morphism_from_seeds(mp, model, zs, seeds);
}

CancellativityReport is_left_cancellative(const MatchedPair& mp) {
    ZappaSzep zs = zappa_szep(mp);
    const FiniteCategory& A = zs.cat;
    CancellativityReport rep;
    for (int f = 0; f < A.num_morphisms(); ++f)
        for (int g1 = 0; g1 < A.num_morphisms(); ++g1) {
            if (A.src(f) != A.dst(g1)) continue;
            for (int g2 = 0; g2 < A.num_morphisms(); ++g2) {
                if (g2 == g1 || A.src(f) != A.dst(g2)) continue;
                if (A.compose(f, g1) == A.compose(f, g2)) {
                    rep.left_cancellative = false;
                    rep.witness = A.morphism_names()[f] + " composed with " +
                                  A.morphism_names()[g1] + " and " +
                                  A.morphism_names()[g2] + " agree";
                    return rep;
                }
            }
        }
    return rep;
}

} // namespace mpx
