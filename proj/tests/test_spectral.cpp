#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpx/chain_maps.hpp"
#include "mpx/spectral.hpp"

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

MatchedPair z6_pair() {
    /* Direct product: both actions trivial, Zappa-Szep product is Z/6. */
    FiniteCategory C = z2(), D = z3();
    return make_matched_pair(
        C, D, [](int, int d) { return d; }, [](int c, int) { return c; });
}

/* A matrix on canonical generators represents the zero homomorphism into
 * `target` iff each torsion row is divisible by its invariant factor and each
 * free row vanishes. */
bool is_zero_hom(const IntMatrix& m, const AbelianGroup& target) {
    int nt = static_cast<int>(target.torsion.size());
    for (int j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.column(j)) {
            if (i < nt) {
                if (v % target.torsion[i] != 0) return false;
            } else if (v != 0) {
                return false;
            }
        }
    return true;
}

long rank_sum(const SpectralPage& page, int k) {
    long r = 0;
    for (int p = 0; p <= k; ++p) r += page.group(p, k - p).free_rank;
    return r;
}

mpz_class torsion_product(const SpectralPage& page, int k) {
    mpz_class t = 1;
    for (int p = 0; p <= k; ++p)
        for (const auto& d : page.group(p, k - p).torsion) t *= d;
    return t;
}

} // namespace

TEST_CASE("trivial pair: both pages collapse to the homology of C") {
    MatchedPair mp = trivial_pair(z2());
    DoubleComplex dc = matched_double_complex(mp, 3);

    SpectralPage e1 = page1(dc, Orientation::hv, 3);
    /* Columns are split in the D direction: homology concentrates in q = 0
       where it is free on the C-tuples. */
    for (int p = 0; p <= 3; ++p)
        for (int q = 1; p + q <= 3; ++q) CHECK(e1.group(p, q).is_trivial());
    CHECK(e1.group(0, 0) == AbelianGroup{1, {}});
    CHECK(e1.group(1, 0) == AbelianGroup{2, {}});
    CHECK(e1.group(2, 0) == AbelianGroup{4, {}});

    /* The induced differential on row 0 is the categorical boundary of C. */
    ChainComplex cx = categorical_complex(z2(), 2);
    CHECK(e1.differentials.at({1, 0}) == cx.boundary(0));
    CHECK(e1.differentials.at({2, 0}) == cx.boundary(1));

    SpectralPage e2hv = page2(dc, Orientation::hv, 3);
    SpectralPage e2vh = page2(dc, Orientation::vh, 3);
    for (const SpectralPage* page : {&e2hv, &e2vh}) {
        CHECK(page->group(0, 0) == AbelianGroup{1, {}});          /* H_0(Z/2) */
        CHECK(page->group(1, 0) == AbelianGroup{0, {mpz_class(2)}}); /* H_1 */
        CHECK(page->group(2, 0).is_trivial());                    /* H_2(Z/2) */
        for (int p = 0; p <= 1; ++p)
            for (int q = 1; p + q <= 2; ++q) CHECK(page->group(p, q).is_trivial());
    }
}

TEST_CASE("S3 pair: page-1 differentials square to zero") {
    DoubleComplex dc = matched_double_complex(s3_pair(), 3);
    for (Orientation o : {Orientation::hv, Orientation::vh}) {
        SpectralPage e1 = page1(dc, o, 3);
        for (const auto& [pos, d] : e1.differentials) {
            auto [p, q] = pos;
            std::pair<int, int> mid = (o == Orientation::hv)
                                          ? std::make_pair(p - 1, q)
                                          : std::make_pair(p, q - 1);
            auto next = e1.differentials.find(mid);
            if (next == e1.differentials.end()) continue;
            std::pair<int, int> tgt = (o == Orientation::hv)
                                          ? std::make_pair(p - 2, q)
                                          : std::make_pair(p, q - 2);
            CHECK(is_zero_hom(next->second * d, e1.group(tgt.first, tgt.second)));
        }
    }
}

TEST_CASE("S3 pair: page 2 agrees with the homology of S3") {
    MatchedPair mp = s3_pair();
    DoubleComplex dc = matched_double_complex(mp, 3);

    /* hv: vertical (Z/3) homology first, so E2_{p,q} = H_p(Z/2; H_q(Z/3))
       with the inversion action; all twisted rows vanish in this range. */
    SpectralPage e2 = page2(dc, Orientation::hv, 3);
    CHECK(e2.group(0, 0) == AbelianGroup{1, {}});
    CHECK(e2.group(1, 0) == AbelianGroup{0, {mpz_class(2)}});
    CHECK(e2.group(2, 0).is_trivial());
    CHECK(e2.group(0, 1).is_trivial());
    CHECK(e2.group(1, 1).is_trivial());
    CHECK(e2.group(0, 2).is_trivial());

    /* Both orientations reproduce the ranks and torsion cardinalities of
       H_k(S3) = Z, Z/2, 0 for k <= 2. */
    ZappaSzep zs = zappa_szep(mp);
    ChainComplex cx = categorical_complex(zs.cat, 2);
    SpectralPage e2vh = page2(dc, Orientation::vh, 3);
    for (int k = 0; k <= 2; ++k) {
        AbelianGroup h = homology(cx, k).group();
        mpz_class card = 1;
        for (const auto& d : h.torsion) card *= d;
        for (const SpectralPage* page : {&e2, &e2vh}) {
            CHECK(rank_sum(*page, k) == h.free_rank);
            CHECK(torsion_product(*page, k) == card);
        }
    }
}

TEST_CASE("Z/2 x Z/3 direct product pair follows the Kunneth pattern") {
    DoubleComplex dc = matched_double_complex(z6_pair(), 3);
    for (Orientation o : {Orientation::hv, Orientation::vh}) {
        SpectralPage e2 = page2(dc, o, 3);
        CHECK(e2.group(0, 0) == AbelianGroup{1, {}});
        CHECK(e2.group(1, 0) == AbelianGroup{0, {mpz_class(2)}});
        CHECK(e2.group(0, 1) == AbelianGroup{0, {mpz_class(3)}});
        CHECK(e2.group(1, 1).is_trivial());
        CHECK(e2.group(2, 0).is_trivial());
        CHECK(e2.group(0, 2).is_trivial());
        /* |E2 in total degree 1| = 6 = |H_1(Z/6)|. */
        CHECK(torsion_product(e2, 1) == 6);
    }
}

TEST_CASE("model pair n = 2: vanishing above the path-category rows") {
    ModelPair model = model_pair(2);
    DoubleComplex dc = matched_double_complex(model.mp, 3);

    /* D = F_2 is the path category of an acyclic graph, so the vh second
       page is concentrated in rows q <= 1. */
    SpectralPage e2vh = page2(dc, Orientation::vh, 3);
    CHECK(e2vh.group(0, 2).is_trivial());

    /* The model Zappa-Szep category is acyclic: only (0,0) = Z survives. */
    SpectralPage e2hv = page2(dc, Orientation::hv, 3);
    for (const SpectralPage* page : {&e2hv, &e2vh})
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; p + q <= 2; ++q) {
                if (p == 0 && q == 0)
                    CHECK(page->group(p, q) == AbelianGroup{1, {}});
                else
                    CHECK(page->group(p, q).is_trivial());
            }
}

TEST_CASE("degree bookkeeping and errors") {
    DoubleComplex dc = matched_double_complex(trivial_pair(z2()), 2);
    CHECK_THROWS_AS(page1(dc, Orientation::hv, 3), Error);
    CHECK_THROWS_AS(page2(dc, Orientation::vh, 0), Error);
    SpectralPage e1 = page1(dc, Orientation::hv, 2);
    CHECK(e1.group(-1, 0).is_trivial());
    CHECK(e1.group(0, -2).is_trivial());
    CHECK_THROWS_AS(e1.group(0, 3), Error);
    SpectralPage e2 = page2(dc, Orientation::hv, 2);
    CHECK(e2.max_total_degree == 1);
    CHECK_THROWS_AS(e2.group(1, 1), Error);
    CHECK(e2.table().find("q=0") != std::string::npos);
}
