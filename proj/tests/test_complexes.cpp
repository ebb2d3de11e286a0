#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "mpx/complexes.hpp"

using namespace mpx;

namespace {

FiniteCategory z2() {
    return monoid_category({"e", "a"}, {{0, 1}, {1, 0}}, 0);
}

FiniteCategory z3() {
    return monoid_category({"0", "1", "2"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 0);
}

MatchedPair s3_pair() {
    FiniteCategory C = z2(), D = z3();
    return make_matched_pair(
        C, D, [](int c, int d) { return c == 0 ? d : (3 - d) % 3; },
        [](int c, int) { return c; });
}

int label_index(const ChainComplex& cx, int k, const std::string& label) {
    auto it = std::find(cx.bases[k].begin(), cx.bases[k].end(), label);
    REQUIRE(it != cx.bases[k].end());
    return static_cast<int>(it - cx.bases[k].begin());
}

} // namespace

TEST_CASE("categorical complex of a discrete category") {
    ChainComplex cx = categorical_complex(discrete_category({"x", "y", "z"}), 2);
    CHECK(cx.dim(0) == 3);
    CHECK(cx.dim(1) == 3); /* identity tuples only */
    /* Unnormalised complex: d0 = 0, odd boundaries are identities. */
    CHECK(cx.boundary(0).is_zero());
    CHECK(homology(cx, 0).group() == AbelianGroup{3, {}});
    CHECK(homology(cx, 1).group().is_trivial());
    CHECK(homology(cx, 2).group().is_trivial());
}

TEST_CASE("categorical complex of the Z/2 monoid") {
    ChainComplex cx = categorical_complex(z2(), 2);
    CHECK(cx.dim(0) == 1);
    CHECK(cx.dim(1) == 2);
    CHECK(cx.dim(2) == 4);
    CHECK(cx.boundary(0).is_zero()); /* one object: d0[c] = [*] - [*] */
    /* d1[a,a] = [a] - [aa] + [a] = 2[a] - [e]; basis order (e,a), tuple (a,a)
       is column 3. */
    int col = label_index(cx, 2, "[a,a]");
    CHECK(cx.boundary(1).get(label_index(cx, 1, "[a]"), col) == 2);
    CHECK(cx.boundary(1).get(label_index(cx, 1, "[e]"), col) == -1);
}

TEST_CASE("categorical complex of the G2 path category") {
    DirectedGraph g;
    g.vertices = {"0", "1", "2"};
    g.edges = {{"e0", "1", "0"}, {"e1", "2", "1"}};
    ChainComplex cx = categorical_complex(path_category(g), 1);
    int col = label_index(cx, 1, "[e0.e1]");
    CHECK(cx.boundary(0).get(label_index(cx, 0, "[2]"), col) == 1);
    CHECK(cx.boundary(0).get(label_index(cx, 0, "[0]"), col) == -1);
    CHECK(cx.boundary(0).get(label_index(cx, 0, "[1]"), col) == 0);
}

TEST_CASE("categorical simplicial identities on Z/2 up to degree 3") {
    FiniteCategory C = z2();
    /* faces: d_i d_j = d_{j-1} d_i for i < j, source degree k */
    for (int k = 2; k <= 3; ++k)
        for (int i = 0; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j)
                CHECK(categorical_face(C, k - 1, i) * categorical_face(C, k, j) ==
                      categorical_face(C, k - 1, j - 1) * categorical_face(C, k, i));
    /* degeneracies: s_i s_j = s_{j+1} s_i for i <= j */
    for (int k = 0; k <= 2; ++k)
        for (int i = 0; i <= k; ++i)
            for (int j = i; j <= k; ++j)
                CHECK(categorical_degeneracy(C, k + 1, i) *
                          categorical_degeneracy(C, k, j) ==
                      categorical_degeneracy(C, k + 1, j + 1) *
                          categorical_degeneracy(C, k, i));
    /* mixed: d_i s_j */
    for (int k = 1; k <= 3; ++k)
        for (int j = 0; j <= k; ++j)
            for (int i = 0; i <= k + 1; ++i) {
                IntMatrix lhs = categorical_face(C, k + 1, i) *
                                categorical_degeneracy(C, k, j);
                if (i == j || i == j + 1) {
                    long n = composable_tuples(C, k).size();
                    CHECK(lhs == IntMatrix::identity(static_cast<int>(n)));
                } else if (i < j) {
                    CHECK(lhs == categorical_degeneracy(C, k - 1, j - 1) *
                                     categorical_face(C, k, i));
                } else {
                    CHECK(lhs == categorical_degeneracy(C, k - 1, j) *
                                     categorical_face(C, k, i - 1));
                }
            }
    SUBCASE("IndexOutOfRange") {
        CHECK_THROWS_AS(categorical_face(C, 2, 3), Error);
        CHECK_THROWS_AS(categorical_degeneracy(C, 2, -1), Error);
    }
}

TEST_CASE("matched double complex of the S3 pair") {
    MatchedPair mp = s3_pair();
    DoubleComplex dc = matched_double_complex(mp, 3); /* asserts invariants */
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q) {
            long expect = 1;
            for (int i = 0; i < p; ++i) expect *= 2;
            for (int i = 0; i < q; ++i) expect *= 3;
            CHECK(dc.dim(p, q) == expect);
        }
    SUBCASE("explicit anticommutation at the origin") {
        IntMatrix hv = dc.d_h.at({0, 0}) * dc.d_v.at({1, 0});
        IntMatrix vh = dc.d_v.at({0, 0}) * dc.d_h.at({0, 1});
        CHECK(hv == vh.negated());
    }
    SUBCASE("horizontal action face formula at (2,1)") {
        auto src = bidegree_basis(mp, 2, 1);
        auto tgt = bidegree_basis(mp, 1, 1);
        IntMatrix f = horizontal_face(mp, 2, 1, 2);
        for (size_t j = 0; j < src.size(); ++j) {
            auto [nds, residual] = mp.act_on_dtuple(src[j].c.ms[1], src[j].d.ms);
            (void)residual;
            BiElement expect;
            expect.c.ms = {src[j].c.ms[0]};
            expect.d.ms = nds;
            auto it = std::find(tgt.begin(), tgt.end(), expect);
            REQUIRE(it != tgt.end());
            CHECK(f.get(static_cast<int>(it - tgt.begin()), static_cast<int>(j)) == 1);
            CHECK(f.column(static_cast<int>(j)).size() == 1);
        }
    }
}

TEST_CASE("trivial pair: row q = 0 reproduces the categorical complex") {
    MatchedPair mp = trivial_pair(z2());
    DoubleComplex dc = matched_double_complex(mp, 2);
    ChainComplex cx = categorical_complex(z2(), 2);
    for (int p = 0; p <= 2; ++p) CHECK(dc.d_h.at({p, 0}) == cx.boundary(p));
    SUBCASE("all d-entries in q > 0 bidegrees are identities") {
        for (const BiElement& el : dc.basis(1, 2))
            for (int d : el.d.ms) CHECK(mp.D().is_identity(d));
    }
}

TEST_CASE("vertical operators carry the sign (-1)^p") {
    MatchedPair mp = trivial_pair(z2());
    /* At p = 1 every vertical face of [c]*[id] is -([c]*[]): entries -1. */
    IntMatrix f0 = vertical_face(mp, 1, 1, 0);
    IntMatrix f1 = vertical_face(mp, 1, 1, 1);
    CHECK(f0 == f1); /* both drop the identity d-entry */
    for (int j = 0; j < f0.cols(); ++j) {
        REQUIRE(f0.column(j).size() == 1);
        CHECK(f0.column(j).begin()->second == -1);
    }
    /* Degeneracies too. */
    IntMatrix s0 = vertical_degeneracy(mp, 1, 0, 0);
    for (int j = 0; j < s0.cols(); ++j)
        CHECK(s0.column(j).begin()->second == -1);
    /* And at p = 0 they are positive. */
    IntMatrix t0 = vertical_degeneracy(mp, 0, 0, 0);
    for (int j = 0; j < t0.cols(); ++j)
        CHECK(t0.column(j).begin()->second == 1);
}

TEST_CASE("bisimplicial degeneracy anticommutation on the S3 pair") {
    MatchedPair mp = s3_pair();
    /* sigma^v sigma^h = -sigma^h sigma^v from (p,q) = (0,0) and (1,1). */
    for (int p : {0, 1})
        for (int q : {0, 1}) {
            IntMatrix vh = vertical_degeneracy(mp, p + 1, q, 0) *
                           horizontal_degeneracy(mp, p, q, 0);
            IntMatrix hv = horizontal_degeneracy(mp, p, q + 1, 0) *
                           vertical_degeneracy(mp, p, q, 0);
            CHECK(vh == hv.negated());
        }
}

TEST_CASE("faces commute with the actions (Lemma on action faces)") {
    MatchedPair mp = s3_pair();
    const FiniteCategory &C = mp.C(), &D = mp.D();
    /* Left action on d-tuples vs faces i >= 1. */
    auto dface = [&](std::vector<int> ds, int i) {
        if (i == static_cast<int>(ds.size()))
            ds.pop_back();
        else {
            ds[i - 1] = D.compose(ds[i - 1], ds[i]);
            ds.erase(ds.begin() + i);
        }
        return ds;
    };
    for (const Tuple& dt : composable_tuples(D, 3))
        for (int c = 0; c < C.num_morphisms(); ++c)
            for (int i = 1; i <= 3; ++i) {
                auto lhs = dface(mp.act_on_dtuple(c, dt.ms).first, i);
                auto rhs = mp.act_on_dtuple(c, dface(dt.ms, i)).first;
                CHECK(lhs == rhs);
            }
    /* Right action on c-tuples vs faces i <= p-1. */
    auto cface = [&](std::vector<int> cs, int i) {
        if (i == 0)
            cs.erase(cs.begin());
        else {
            cs[i - 1] = C.compose(cs[i - 1], cs[i]);
            cs.erase(cs.begin() + i);
        }
        return cs;
    };
    for (const Tuple& ct : composable_tuples(C, 3))
        for (int d = 0; d < D.num_morphisms(); ++d)
            for (int i = 0; i <= 2; ++i) {
                auto lhs = cface(mp.act_on_ctuple(ct.ms, d).second, i);
                auto rhs = mp.act_on_ctuple(cface(ct.ms, i), d).second;
                CHECK(lhs == rhs);
            }
}

TEST_CASE("diagonal complex") {
    SUBCASE("S3 pair: dimensions and d.d = 0") {
        ChainComplex cx = diagonal_complex(s3_pair(), 2);
        CHECK(cx.dim(0) == 1);
        CHECK(cx.dim(1) == 6);
        CHECK(cx.dim(2) == 36);
        CHECK((cx.boundary(0) * cx.boundary(1)).is_zero());
    }
    SUBCASE("trivial pair mirrors the categorical complex dimensions") {
        ChainComplex diag = diagonal_complex(trivial_pair(z2()), 2);
        ChainComplex cat = categorical_complex(z2(), 2);
        for (int k = 0; k <= 3; ++k) CHECK(diag.dim(k) == cat.dim(k));
    }
}

TEST_CASE("total complex") {
    SUBCASE("S3 pair builds with d.d = 0 and block sizes") {
        DoubleComplex dc = matched_double_complex(s3_pair(), 3);
        ChainComplex tot = total_complex(dc, 3);
        CHECK(tot.dim(0) == 1);
        CHECK(tot.dim(1) == 5);   /* 3 + 2 */
        CHECK(tot.dim(2) == 19);  /* 9 + 6 + 4 */
        CHECK(tot.dim(3) == 65);  /* 27 + 18 + 12 + 8 */
    }
    SUBCASE("degree-0 boundary on the model pair n = 1") {
        ModelPair m = model_pair(1);
        DoubleComplex dc = matched_double_complex(m.mp, 1);
        ChainComplex tot = total_complex(dc, 1);
        /* The empty c-part sits at r(d) = (0,1). */
        int col = label_index(tot, 1, "[(0,1)]*[f(0,0)]");
        CHECK(tot.boundary(0).get(label_index(tot, 0, "[(0,0)]*[(0,0)]"), col) == 1);
        CHECK(tot.boundary(0).get(label_index(tot, 0, "[(0,1)]*[(0,1)]"), col) == -1);
        int col2 = label_index(tot, 1, "[e(0,0)]*[(1,0)]");
        CHECK(tot.boundary(0).get(label_index(tot, 0, "[(1,0)]*[(1,0)]"), col2) == 1);
        CHECK(tot.boundary(0).get(label_index(tot, 0, "[(0,0)]*[(0,0)]"), col2) == -1);
    }
    SUBCASE("DegreeNotMaterialised beyond the built range") {
        DoubleComplex dc = matched_double_complex(trivial_pair(z2()), 1);
        CHECK_THROWS_AS(total_complex(dc, 2), Error);
        ChainComplex tot = total_complex(dc, 1);
        CHECK_THROWS_AS(homology(tot, 2), Error);
    }
}
