#include "mpx/complexes.hpp"

namespace mpx {

int ChainComplex::dim(int k) const {
    if (k < 0 || k >= static_cast<int>(bases.size())) return 0;
    return static_cast<int>(bases[k].size());
}

const IntMatrix& ChainComplex::boundary(int k) const {
    if (k < 0 || k >= static_cast<int>(boundaries.size()))
        throw Error("DegreeNotMaterialised",
                    "boundary at degree " + std::to_string(k) + " was not built");
    return boundaries[k];
}

HomologyData homology(const ChainComplex& cx, int k) {
    if (k < 0 || k > cx.max_degree)
        throw Error("DegreeNotMaterialised",
                    "homology at degree " + std::to_string(k) + " was not built");
    IntMatrix d_out =
        k >= 1 ? cx.boundaries[k - 1] : IntMatrix::zero(0, cx.dim(0));
    return HomologyData(d_out, cx.boundaries[k]);
}

/* ---------------- categorical simplicial operators ---------------- */

namespace {

/* Face i of a composable k-tuple (k >= 1, 0 <= i <= k). */
Tuple cat_face_el(const FiniteCategory& C, const Tuple& t, int i) {
    const int k = t.degree();
    Tuple out;
    if (i == 0) {
        out.ms.assign(t.ms.begin() + 1, t.ms.end());
        if (out.ms.empty()) out.obj = C.src(t.ms[0]);
    } else if (i == k) {
        out.ms.assign(t.ms.begin(), t.ms.end() - 1);
        if (out.ms.empty()) out.obj = C.dst(t.ms[k - 1]);
    } else {
        out.ms = t.ms;
        out.ms[i - 1] = C.compose(t.ms[i - 1], t.ms[i]);
        out.ms.erase(out.ms.begin() + i);
    }
    return out;
}

/* Degeneracy i of a composable k-tuple (0 <= i <= k): insert an identity in
   slot i. */
Tuple cat_degen_el(const FiniteCategory& C, const Tuple& t, int i) {
    Tuple out = t;
    int obj;
    if (t.ms.empty())
        obj = t.obj;
    else if (i == 0)
        obj = C.dst(t.ms.front());
    else
        obj = C.src(t.ms[i - 1]);
    out.ms.insert(out.ms.begin() + i, C.identity_of(obj));
    out.obj = -1;
    return out;
}

std::map<Tuple, int> index_tuples(const std::vector<Tuple>& ts) {
    std::map<Tuple, int> m;
    for (size_t i = 0; i < ts.size(); ++i) m[ts[i]] = static_cast<int>(i);
    return m;
}

void check_face_index(int i, int lo, int hi) {
    if (i < lo || i > hi)
        throw Error("IndexOutOfRange", "simplicial index " + std::to_string(i) +
                                           " outside [" + std::to_string(lo) + ", " +
                                           std::to_string(hi) + "]");
}

} // namespace

IntMatrix categorical_face(const FiniteCategory& C, int k, int i, long cap) {
    if (k < 1) throw Error("IndexOutOfRange", "faces need source degree >= 1");
    check_face_index(i, 0, k);
    auto src = composable_tuples(C, k, cap);
    auto tgt = composable_tuples(C, k - 1, cap);
    auto idx = index_tuples(tgt);
    IntMatrix m = IntMatrix::zero(static_cast<int>(tgt.size()),
                                  static_cast<int>(src.size()));
    for (size_t j = 0; j < src.size(); ++j)
        m.add(idx.at(cat_face_el(C, src[j], i)), static_cast<int>(j), 1);
    return m;
}

IntMatrix categorical_degeneracy(const FiniteCategory& C, int k, int i, long cap) {
    if (k < 0) throw Error("IndexOutOfRange", "negative degree");
    check_face_index(i, 0, k);
    auto src = composable_tuples(C, k, cap);
    auto tgt = composable_tuples(C, k + 1, cap);
    auto idx = index_tuples(tgt);
    IntMatrix m = IntMatrix::zero(static_cast<int>(tgt.size()),
                                  static_cast<int>(src.size()));
    for (size_t j = 0; j < src.size(); ++j)
        m.add(idx.at(cat_degen_el(C, src[j], i)), static_cast<int>(j), 1);
    return m;
}

ChainComplex categorical_complex(const FiniteCategory& C, int K, long cap) {
    if (K < 0) throw Error("IndexOutOfRange", "max degree must be >= 0");
    ChainComplex cx;
    cx.max_degree = K;
    std::vector<std::vector<Tuple>> tuples;
    for (int k = 0; k <= K + 1; ++k) {
        tuples.push_back(composable_tuples(C, k, cap));
        std::vector<std::string> labels;
        for (const Tuple& t : tuples[k]) labels.push_back(tuple_label(C, t));
        cx.bases.push_back(std::move(labels));
    }
    for (int k = 0; k <= K; ++k) {
        auto idx = index_tuples(tuples[k]);
        IntMatrix d = IntMatrix::zero(static_cast<int>(tuples[k].size()),
                                      static_cast<int>(tuples[k + 1].size()));
        for (size_t j = 0; j < tuples[k + 1].size(); ++j)
            for (int i = 0; i <= k + 1; ++i)
                d.add(idx.at(cat_face_el(C, tuples[k + 1][j], i)),
                      static_cast<int>(j), (i % 2 == 0) ? 1 : -1);
        cx.boundaries.push_back(std::move(d));
    }
    for (int k = 0; k + 1 <= K; ++k) {
        IntMatrix dd = cx.boundaries[k] * cx.boundaries[k + 1];
        if (!dd.is_zero())
            throw Error("NotAComplex", "d.d != 0 at degree " + std::to_string(k + 2));
    }
    return cx;
}

/* ---------------- double complex operators ---------------- */

namespace {

/* The object where the C-part meets the D-part. */
int junction(const MatchedPair& mp, const BiElement& el) {
    return tuple_s(mp.C(), el.c);
}

BiElement make_bi(const MatchedPair& mp, std::vector<int> cs, std::vector<int> ds,
                  int junction_obj) {
    BiElement el;
    el.c.ms = std::move(cs);
    el.d.ms = std::move(ds);
    el.c.obj = el.c.ms.empty()
                   ? (el.d.ms.empty() ? junction_obj : mp.D().dst(el.d.ms.front()))
                   : -1;
    el.d.obj = el.d.ms.empty() ? (el.c.ms.empty() ? junction_obj
                                                  : mp.C().src(el.c.ms.back()))
                               : -1;
    return el;
}

/* Horizontal face i at source bidegree (p,q), p >= 1. */
BiElement bi_face_h(const MatchedPair& mp, const BiElement& el, int i) {
    const int p = el.c.degree();
    std::vector<int> cs = el.c.ms, ds = el.d.ms;
    if (i == p) {
        auto [nds, residual] = mp.act_on_dtuple(cs.back(), ds);
        (void)residual;
        cs.pop_back();
        return make_bi(mp, std::move(cs), std::move(nds),
                       mp.C().dst(el.c.ms.back()));
    }
    if (i == 0)
        cs.erase(cs.begin());
    else {
        cs[i - 1] = mp.C().compose(cs[i - 1], cs[i]);
        cs.erase(cs.begin() + i);
    }
    return make_bi(mp, std::move(cs), std::move(ds), junction(mp, el));
}

/* Vertical face j (unsigned) at source bidegree (p,q), q >= 1. */
BiElement bi_face_v(const MatchedPair& mp, const BiElement& el, int j) {
    const int q = el.d.degree();
    std::vector<int> cs = el.c.ms, ds = el.d.ms;
    if (j == 0) {
        auto [residual, ncs] = mp.act_on_ctuple(cs, ds.front());
        (void)residual;
        ds.erase(ds.begin());
        return make_bi(mp, std::move(ncs), std::move(ds),
                       mp.D().src(el.d.ms.front()));
    }
    if (j == q)
        ds.pop_back();
    else {
        ds[j - 1] = mp.D().compose(ds[j - 1], ds[j]);
        ds.erase(ds.begin() + j);
    }
    return make_bi(mp, std::move(cs), std::move(ds), junction(mp, el));
}

BiElement bi_degen_h(const MatchedPair& mp, const BiElement& el, int i) {
    std::vector<int> cs = el.c.ms, ds = el.d.ms;
    int obj;
    if (cs.empty())
        obj = tuple_r(mp.D(), el.d); /* = the junction object */
    else if (i == 0)
        obj = mp.C().dst(cs.front());
    else
        obj = mp.C().src(cs[i - 1]);
    cs.insert(cs.begin() + i, mp.C().identity_of(obj));
    return make_bi(mp, std::move(cs), std::move(ds), obj);
}

BiElement bi_degen_v(const MatchedPair& mp, const BiElement& el, int j) {
    std::vector<int> cs = el.c.ms, ds = el.d.ms;
    int obj = (j == 0) ? junction(mp, el) : mp.D().src(ds[j - 1]);
    ds.insert(ds.begin() + j, mp.D().identity_of(obj));
    return make_bi(mp, std::move(cs), std::move(ds), junction(mp, el));
}

std::map<BiElement, int> index_bi(const std::vector<BiElement>& els) {
    std::map<BiElement, int> m;
    for (size_t i = 0; i < els.size(); ++i) m[els[i]] = static_cast<int>(i);
    return m;
}

using BiOp = BiElement (*)(const MatchedPair&, const BiElement&, int);

IntMatrix bi_operator_matrix(const MatchedPair& mp,
                             const std::vector<BiElement>& src,
                             const std::vector<BiElement>& tgt, BiOp op, int i,
                             int sign) {
    auto idx = index_bi(tgt);
    IntMatrix m = IntMatrix::zero(static_cast<int>(tgt.size()),
                                  static_cast<int>(src.size()));
    for (size_t j = 0; j < src.size(); ++j)
        m.add(idx.at(op(mp, src[j], i)), static_cast<int>(j), sign);
    return m;
}

} // namespace

BiElement make_bielement(const MatchedPair& mp, std::vector<int> cs,
                         std::vector<int> ds, int junction_obj) {
    return make_bi(mp, std::move(cs), std::move(ds), junction_obj);
}

BiElement bi_face_horizontal(const MatchedPair& mp, const BiElement& el, int i) {
    check_face_index(i, 0, el.c.degree());
    if (el.c.degree() < 1)
        throw Error("IndexOutOfRange", "horizontal faces need p >= 1");
    return bi_face_h(mp, el, i);
}

BiElement bi_face_vertical(const MatchedPair& mp, const BiElement& el, int j) {
    check_face_index(j, 0, el.d.degree());
    if (el.d.degree() < 1)
        throw Error("IndexOutOfRange", "vertical faces need q >= 1");
    return bi_face_v(mp, el, j);
}

BiElement bi_degeneracy_horizontal(const MatchedPair& mp, const BiElement& el,
                                   int i) {
    check_face_index(i, 0, el.c.degree());
    return bi_degen_h(mp, el, i);
}

BiElement bi_degeneracy_vertical(const MatchedPair& mp, const BiElement& el,
                                 int j) {
    check_face_index(j, 0, el.d.degree());
    return bi_degen_v(mp, el, j);
}

std::string bielement_label(const MatchedPair& mp, const BiElement& el) {
    return tuple_label(mp.C(), el.c) + "*" + tuple_label(mp.D(), el.d);
}

std::vector<BiElement> bidegree_basis(const MatchedPair& mp, int p, int q,
                                      long cap) {
    auto cts = composable_tuples(mp.C(), p, cap);
    auto dts = composable_tuples(mp.D(), q, cap);
    std::vector<BiElement> out;
    long count = 0;
    for (const Tuple& ct : cts)
        for (const Tuple& dt : dts) {
            if (tuple_s(mp.C(), ct) != tuple_r(mp.D(), dt)) continue;
            if (++count > cap)
                throw Error("DegreeTooLarge",
                            "bidegree basis exceeds the enumeration cap");
            out.push_back(BiElement{ct, dt});
        }
    return out;
}

IntMatrix horizontal_face(const MatchedPair& mp, int p, int q, int i, long cap) {
    if (p < 1) throw Error("IndexOutOfRange", "horizontal faces need p >= 1");
    check_face_index(i, 0, p);
    return bi_operator_matrix(mp, bidegree_basis(mp, p, q, cap),
                              bidegree_basis(mp, p - 1, q, cap), &bi_face_h, i, 1);
}

IntMatrix vertical_face(const MatchedPair& mp, int p, int q, int j, long cap) {
    if (q < 1) throw Error("IndexOutOfRange", "vertical faces need q >= 1");
    check_face_index(j, 0, q);
    return bi_operator_matrix(mp, bidegree_basis(mp, p, q, cap),
                              bidegree_basis(mp, p, q - 1, cap), &bi_face_v, j,
                              p % 2 == 0 ? 1 : -1);
}

IntMatrix horizontal_degeneracy(const MatchedPair& mp, int p, int q, int i,
                                long cap) {
    check_face_index(i, 0, p);
    return bi_operator_matrix(mp, bidegree_basis(mp, p, q, cap),
                              bidegree_basis(mp, p + 1, q, cap), &bi_degen_h, i, 1);
}

IntMatrix vertical_degeneracy(const MatchedPair& mp, int p, int q, int j,
                              long cap) {
    check_face_index(j, 0, q);
    return bi_operator_matrix(mp, bidegree_basis(mp, p, q, cap),
                              bidegree_basis(mp, p, q + 1, cap), &bi_degen_v, j,
                              p % 2 == 0 ? 1 : -1);
}

int DoubleComplex::dim(int p, int q) const {
    auto it = bases.find({p, q});
    return it == bases.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<BiElement>& DoubleComplex::basis(int p, int q) const {
    auto it = bases.find({p, q});
    if (it == bases.end())
        throw Error("DegreeNotMaterialised", "bidegree (" + std::to_string(p) +
                                                 "," + std::to_string(q) +
                                                 ") was not built");
    return it->second;
}

DoubleComplex matched_double_complex(const MatchedPair& mp, int K, long cap) {
    if (K < 0) throw Error("IndexOutOfRange", "max total degree must be >= 0");
    DoubleComplex dc;
    dc.mp = mp;
    dc.max_total_degree = K;
    for (int p = 0; p <= K + 1; ++p)
        for (int q = 0; p + q <= K + 1; ++q)
            dc.bases[{p, q}] = bidegree_basis(mp, p, q, cap);

    for (int p = 0; p <= K; ++p)
        for (int q = 0; p + q <= K; ++q) {
            const auto& tgt = dc.bases.at({p, q});
            auto idx = index_bi(tgt);
            {
                const auto& src = dc.bases.at({p + 1, q});
                IntMatrix dh = IntMatrix::zero(static_cast<int>(tgt.size()),
                                               static_cast<int>(src.size()));
                for (size_t j = 0; j < src.size(); ++j)
                    for (int i = 0; i <= p + 1; ++i)
                        dh.add(idx.at(bi_face_h(mp, src[j], i)),
                               static_cast<int>(j), (i % 2 == 0) ? 1 : -1);
                dc.d_h[{p, q}] = std::move(dh);
            }
            {
                const auto& src = dc.bases.at({p, q + 1});
                int psign = (p % 2 == 0) ? 1 : -1;
                IntMatrix dv = IntMatrix::zero(static_cast<int>(tgt.size()),
                                               static_cast<int>(src.size()));
                for (size_t j = 0; j < src.size(); ++j)
                    for (int i = 0; i <= q + 1; ++i)
                        dv.add(idx.at(bi_face_v(mp, src[j], i)),
                               static_cast<int>(j),
                               (i % 2 == 0) ? psign : -psign);
                dc.d_v[{p, q}] = std::move(dv);
            }
        }

    /* Build-time invariants. */
    for (int p = 0; p <= K; ++p)
        for (int q = 0; p + q <= K - 1; ++q) {
            IntMatrix hh = dc.d_h.at({p, q}) * dc.d_h.at({p + 1, q});
            if (!hh.is_zero())
                throw Error("NotAComplex", "d_h d_h != 0 at (" + std::to_string(p) +
                                               "," + std::to_string(q) + ")");
            IntMatrix vv = dc.d_v.at({p, q}) * dc.d_v.at({p, q + 1});
            if (!vv.is_zero())
                throw Error("NotAComplex", "d_v d_v != 0 at (" + std::to_string(p) +
                                               "," + std::to_string(q) + ")");
            IntMatrix hv = dc.d_h.at({p, q}) * dc.d_v.at({p + 1, q});
            IntMatrix vh = dc.d_v.at({p, q}) * dc.d_h.at({p, q + 1});
            if (!(hv + vh).is_zero())
                throw Error("NotAComplex",
                            "d_h d_v != -d_v d_h at (" + std::to_string(p) + "," +
                                std::to_string(q) + ")");
        }
    return dc;
}

ChainComplex diagonal_complex(const MatchedPair& mp, int K, long cap) {
    if (K < 0) throw Error("IndexOutOfRange", "max degree must be >= 0");
    ChainComplex cx;
    cx.max_degree = K;
    std::vector<std::vector<BiElement>> diag;
    for (int k = 0; k <= K + 1; ++k) {
        diag.push_back(bidegree_basis(mp, k, k, cap));
        std::vector<std::string> labels;
        for (const BiElement& el : diag[k]) labels.push_back(bielement_label(mp, el));
        cx.bases.push_back(std::move(labels));
    }
    for (int k = 0; k <= K; ++k) {
        auto idx = index_bi(diag[k]);
        IntMatrix d = IntMatrix::zero(static_cast<int>(diag[k].size()),
                                      static_cast<int>(diag[k + 1].size()));
        for (size_t j = 0; j < diag[k + 1].size(); ++j)
            for (int i = 0; i <= k + 1; ++i) {
                /* Diagonal face: unsigned vertical face, then horizontal. */
                BiElement mid = bi_face_v(mp, diag[k + 1][j], i);
                d.add(idx.at(bi_face_h(mp, mid, i)), static_cast<int>(j),
                      (i % 2 == 0) ? 1 : -1);
            }
        cx.boundaries.push_back(std::move(d));
    }
    for (int k = 0; k + 1 <= K; ++k) {
        IntMatrix dd = cx.boundaries[k] * cx.boundaries[k + 1];
        if (!dd.is_zero())
            throw Error("NotAComplex",
                        "diagonal d.d != 0 at degree " + std::to_string(k + 2));
    }
    return cx;
}

ChainComplex total_complex(const DoubleComplex& dc, int K) {
    if (K < 0 || K > dc.max_total_degree)
        throw Error("DegreeNotMaterialised",
                    "total complex degree exceeds the materialised range");
    ChainComplex cx;
    cx.max_degree = K;
    /* offsets[k][p] = starting row of block (p, k-p) in degree k. */
    std::vector<std::vector<int>> offsets(K + 2);
    for (int k = 0; k <= K + 1; ++k) {
        std::vector<std::string> labels;
        for (int p = 0; p <= k; ++p) {
            offsets[k].push_back(static_cast<int>(labels.size()));
            for (const BiElement& el : dc.basis(p, k - p))
                labels.push_back(bielement_label(dc.mp, el));
        }
        cx.bases.push_back(std::move(labels));
    }
    for (int k = 0; k <= K; ++k) {
        IntMatrix d = IntMatrix::zero(cx.dim(k), cx.dim(k + 1));
        int col0 = 0;
        for (int p = 0; p <= k + 1; ++p) {
            int q = k + 1 - p;
            int ncols = dc.dim(p, q);
            /* vertical block into (p, q-1) and horizontal into (p-1, q) */
            if (q >= 1) {
                const IntMatrix& dv = dc.d_v.at({p, q - 1});
                for (int j = 0; j < ncols; ++j)
                    for (const auto& [r, v] : dv.column(j))
                        d.add(offsets[k][p] + r, col0 + j, v);
            }
            if (p >= 1) {
                const IntMatrix& dh = dc.d_h.at({p - 1, q});
                for (int j = 0; j < ncols; ++j)
                    for (const auto& [r, v] : dh.column(j))
                        d.add(offsets[k][p - 1] + r, col0 + j, v);
            }
            col0 += ncols;
        }
        cx.boundaries.push_back(std::move(d));
    }
    for (int k = 0; k + 1 <= K; ++k) {
        IntMatrix dd = cx.boundaries[k] * cx.boundaries[k + 1];
        if (!dd.is_zero())
            throw Error("NotAComplex",
                        "total d.d != 0 at degree " + std::to_string(k + 2));
    }
    return cx;
}

} // namespace mpx
