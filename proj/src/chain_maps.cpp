#include "mpx/chain_maps.hpp"

#include <algorithm>
#include <functional>

namespace mpx {

namespace {

std::map<BiElement, int> index_bi(const std::vector<BiElement>& els) {
    std::map<BiElement, int> m;
    for (size_t i = 0; i < els.size(); ++i) m[els[i]] = static_cast<int>(i);
    return m;
}

/* Per-degree layout of the total complex: bidegree bases, their index maps and
 * their block offsets, in the same order as total_complex produces. */
struct TotalLayout {
    std::vector<std::vector<std::vector<BiElement>>> elems; /* [k][p] */
    std::vector<std::vector<std::map<BiElement, int>>> idx;
    std::vector<std::vector<int>> offset;
    std::vector<int> dim;

    TotalLayout(const MatchedPair& mp, int K, long cap) {
        for (int k = 0; k <= K + 1; ++k) {
            elems.emplace_back();
            idx.emplace_back();
            offset.emplace_back();
            int total = 0;
            for (int p = 0; p <= k; ++p) {
                offset[k].push_back(total);
                elems[k].push_back(bidegree_basis(mp, p, k - p, cap));
                idx[k].push_back(index_bi(elems[k][p]));
                total += static_cast<int>(elems[k][p].size());
            }
            dim.push_back(total);
        }
    }

    int index_of(int k, int p, const BiElement& el) const {
        return offset[k][p] + idx[k][p].at(el);
    }
};

/* All (p,q)-shuffles as (first block, second block, sign). */
struct Shuffle {
    std::vector<int> lo, hi; /* beta(1..p) and beta(p+1..p+q), values 1-based */
    int sign;
};

std::vector<Shuffle> shuffles(int p, int q) {
    std::vector<Shuffle> out;
    std::vector<int> pick(p);
    /* Enumerate p-subsets of {1..p+q} in lexicographic order. */
    std::function<void(int, int)> rec = [&](int next, int chosen) {
        if (chosen == p) {
            Shuffle sh;
            sh.lo.assign(pick.begin(), pick.end());
            std::vector<bool> used(p + q + 1, false);
            for (int v : sh.lo) used[v] = true;
            for (int v = 1; v <= p + q; ++v)
                if (!used[v]) sh.hi.push_back(v);
            long inv = 0;
            for (int i = 1; i <= p; ++i) inv += sh.lo[i - 1] - i;
            sh.sign = (inv % 2 == 0) ? 1 : -1;
            out.push_back(std::move(sh));
            return;
        }
        for (int v = next; v <= p + q - (p - chosen - 1); ++v) {
            pick[chosen] = v;
            rec(v + 1, chosen + 1);
        }
    };
    rec(1, 0);
    return out;
}

void must_verify(ChainMap& f, const std::string& name) {
    ChainMapReport rep = verify_chain_map(f);
    if (!rep.ok) throw Error("NotAChainMap", name + ": " + rep.witness);
}

/* tau: normalise a word of (d, c) pairs into (D-tuple, C-tuple) by crossing
 * adjacent (c, d) letters; the result is order-independent. */
std::pair<std::vector<int>, std::vector<int>> tau(
    const MatchedPair& mp, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::pair<bool, int>> w; /* (is_c_letter, morphism) */
    for (const auto& [d, c] : pairs) {
        w.emplace_back(false, d);
        w.emplace_back(true, c);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i].first && !w[i + 1].first) {
                int c = w[i].second, d = w[i + 1].second;
                w[i] = {false, mp.act_L(c, d)};
                w[i + 1] = {true, mp.act_R(c, d)};
                changed = true;
            }
    }
    std::vector<int> ds, cs;
    for (const auto& [is_c, m] : w) (is_c ? cs : ds).push_back(m);
    return {ds, cs};
}

/* Pi on a single diagonal element: cross adjacent (c, d) pairs per the
 * recursive formula, producing k pairs (d', c'). */
std::vector<std::pair<int, int>> pi_element(const MatchedPair& mp,
                                            const std::vector<int>& cs,
                                            const std::vector<int>& ds) {
    const size_t k = cs.size();
    if (k == 0) return {};
    auto sub = pi_element(mp, {cs.begin() + 1, cs.end()}, {ds.begin(), ds.end() - 1});
    std::vector<int> cseq{cs[0]}, dseq;
    for (const auto& [dp, cp] : sub) {
        dseq.push_back(dp);
        cseq.push_back(cp);
    }
    dseq.push_back(ds.back());
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < k; ++i)
        out.emplace_back(mp.act_L(cseq[i], dseq[i]), mp.act_R(cseq[i], dseq[i]));
    return out;
}

} // namespace

ChainMapReport verify_chain_map(ChainMap& f) {
    ChainMapReport rep;
    int K = std::min(f.source.max_degree, f.target.max_degree);
    for (int k = 0; k <= K; ++k) {
        IntMatrix lhs = f.target.boundary(k) * f.blocks[k + 1];
        IntMatrix rhs = f.blocks[k] * f.source.boundary(k);
        if (lhs == rhs) continue;
        rep.ok = false;
        for (int j = 0; j < lhs.cols(); ++j)
            if (lhs.column(j) != rhs.column(j)) {
                rep.witness = "degree " + std::to_string(k + 1) + ", basis element " +
                              f.source.bases[k + 1][j];
                break;
            }
        return rep;
    }
    f.verified = true;
    return rep;
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
    if (g.target.bases != f.source.bases)
        throw Error("ShapeMismatch",
                    "chain maps are not composable: bases do not match");
    ChainMap h;
    h.source = g.source;
    h.target = f.target;
    size_t n = std::min(f.blocks.size(), g.blocks.size());
    for (size_t k = 0; k < n; ++k) h.blocks.push_back(f.blocks[k] * g.blocks[k]);
    h.verified = f.verified && g.verified;
    return h;
}

ChainMap eilenberg_zilber(const MatchedPair& mp, int K, long cap) {
    ChainMap f;
    DoubleComplex dc = matched_double_complex(mp, K, cap);
    f.source = total_complex(dc, K);
    f.target = diagonal_complex(mp, K, cap);
    TotalLayout lay(mp, K, cap);
    for (int k = 0; k <= K + 1; ++k) {
        auto diag = bidegree_basis(mp, k, k, cap);
        auto didx = index_bi(diag);
        IntMatrix m = IntMatrix::zero(static_cast<int>(diag.size()), lay.dim[k]);
        for (int p = 0; p <= k; ++p) {
            int q = k - p;
            auto shs = shuffles(p, q);
            for (size_t j = 0; j < lay.elems[k][p].size(); ++j) {
                int col = lay.offset[k][p] + static_cast<int>(j);
                for (const Shuffle& sh : shs) {
                    BiElement cur = lay.elems[k][p][j];
                    for (int i = 0; i < p; ++i)
                        cur = bi_degeneracy_vertical(mp, cur, sh.lo[i] - 1);
                    for (int i = 0; i < q; ++i)
                        cur = bi_degeneracy_horizontal(mp, cur, sh.hi[i] - 1);
                    m.add(didx.at(cur), col, sh.sign);
                }
            }
        }
        f.blocks.push_back(std::move(m));
    }
    must_verify(f, "eilenberg_zilber");
    return f;
}

ChainMap alexander_whitney(const MatchedPair& mp, int K, long cap) {
    ChainMap f;
    DoubleComplex dc = matched_double_complex(mp, K, cap);
    f.source = diagonal_complex(mp, K, cap);
    f.target = total_complex(dc, K);
    TotalLayout lay(mp, K, cap);
    for (int n = 0; n <= K + 1; ++n) {
        auto diag = bidegree_basis(mp, n, n, cap);
        IntMatrix m = IntMatrix::zero(lay.dim[n], static_cast<int>(diag.size()));
        for (size_t j = 0; j < diag.size(); ++j)
            for (int p = 0; p <= n; ++p) {
                BiElement cur = diag[j];
                for (int i = 0; i < p; ++i) cur = bi_face_vertical(mp, cur, 0);
                for (int h = n; h > p; --h) cur = bi_face_horizontal(mp, cur, h);
                m.add(lay.index_of(n, p, cur), static_cast<int>(j), 1);
            }
        f.blocks.push_back(std::move(m));
    }
    must_verify(f, "alexander_whitney");
    return f;
}

ChainMap pi_map(const MatchedPair& mp, int K, long cap) {
    ZappaSzep zs = zappa_szep(mp);
    std::map<std::pair<int, int>, int> pair_idx;
    for (size_t i = 0; i < zs.pair_of.size(); ++i)
        pair_idx[zs.pair_of[i]] = static_cast<int>(i);

    ChainMap f;
    f.source = diagonal_complex(mp, K, cap);
    f.target = categorical_complex(zs.cat, K, cap);
    for (int k = 0; k <= K + 1; ++k) {
        auto diag = bidegree_basis(mp, k, k, cap);
        auto tuples = composable_tuples(zs.cat, k, cap);
        std::map<Tuple, int> tidx;
        for (size_t i = 0; i < tuples.size(); ++i)
            tidx[tuples[i]] = static_cast<int>(i);
        IntMatrix m = IntMatrix::zero(static_cast<int>(tuples.size()),
                                      static_cast<int>(diag.size()));
        for (size_t j = 0; j < diag.size(); ++j) {
            Tuple out;
            if (k == 0)
                out.obj = diag[j].c.obj;
            else
                for (const auto& dc : pi_element(mp, diag[j].c.ms, diag[j].d.ms))
                    out.ms.push_back(pair_idx.at(dc));
            m.add(tidx.at(out), static_cast<int>(j), 1);
        }
        f.blocks.push_back(std::move(m));
    }
    must_verify(f, "pi_map");
    return f;
}

ChainMap psi_map(const MatchedPair& mp, int K, long cap) {
    ZappaSzep zs = zappa_szep(mp);
    ChainMap f;
    DoubleComplex dc = matched_double_complex(mp, K, cap);
    f.source = categorical_complex(zs.cat, K, cap);
    f.target = total_complex(dc, K);
    TotalLayout lay(mp, K, cap);
    for (int k = 0; k <= K + 1; ++k) {
        auto tuples = composable_tuples(zs.cat, k, cap);
        IntMatrix m = IntMatrix::zero(lay.dim[k], static_cast<int>(tuples.size()));
        for (size_t j = 0; j < tuples.size(); ++j) {
            std::vector<std::pair<int, int>> pairs;
            for (int g : tuples[j].ms) pairs.push_back(zs.pair_of[g]);
            for (int p = 0; p <= k; ++p) {
                int q = k - p;
                auto front = tau(mp, {pairs.begin(), pairs.begin() + p});
                auto back = tau(mp, {pairs.begin() + p, pairs.end()});
                /* middle projection: C-part of the front, D-part of the back */
                int junction = (k == 0) ? tuples[j].obj
                               : (p > 0) ? mp.C().src(front.second.back())
                                         : mp.D().dst(back.first.front());
                BiElement el = make_bielement(mp, front.second, back.first, junction);
                m.add(lay.index_of(k, p, el), static_cast<int>(j), 1);
            }
        }
        f.blocks.push_back(std::move(m));
    }
    must_verify(f, "psi_map");
    return f;
}

} // namespace mpx
