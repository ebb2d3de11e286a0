#include "mpx/spectral.hpp"

#include <sstream>

namespace mpx {

namespace {

/* Page-1 groups with full generator tracking, plus induced differentials,
 * for all positions with p + q <= K. */
struct Page1Data {
    std::map<std::pair<int, int>, HomologyData> H;
    std::map<std::pair<int, int>, IntMatrix> diff; /* keyed by source */
};

int generator_count(const AbelianGroup& g) {
    return static_cast<int>(g.torsion.size()) + static_cast<int>(g.free_rank);
}

Page1Data compute_page1(const DoubleComplex& dc, Orientation o, int K) {
    if (K < 0 || K > dc.max_total_degree)
        throw Error("DegreeNotMaterialised",
                    "spectral page requested to degree " + std::to_string(K) +
                        " but the double complex is materialised to " +
                        std::to_string(dc.max_total_degree));
    Page1Data out;
    for (int p = 0; p <= K; ++p)
        for (int q = 0; p + q <= K; ++q) {
            /* hv: homology of column p in the q direction; vh: homology of
             * row q in the p direction. */
            IntMatrix d_in = (o == Orientation::hv) ? dc.d_v.at({p, q})
                                                    : dc.d_h.at({p, q});
            IntMatrix d_out;
            if (o == Orientation::hv)
                d_out = (q > 0) ? dc.d_v.at({p, q - 1})
                                : IntMatrix::zero(0, dc.dim(p, q));
            else
                d_out = (p > 0) ? dc.d_h.at({p - 1, q})
                                : IntMatrix::zero(0, dc.dim(p, q));
            out.H.emplace(std::make_pair(p, q), HomologyData(d_out, d_in));
        }
    /* Induced differentials: the complementary differential descends to the
     * page-1 groups (it maps cycles to cycles and boundaries to boundaries
     * because d_h and d_v anticommute). */
    for (const auto& [pos, src] : out.H) {
        auto [p, q] = pos;
        std::pair<int, int> tgt = (o == Orientation::hv)
                                      ? std::make_pair(p - 1, q)
                                      : std::make_pair(p, q - 1);
        auto it = out.H.find(tgt);
        if (it == out.H.end()) continue;
        const IntMatrix& f = (o == Orientation::hv) ? dc.d_h.at(tgt)
                                                    : dc.d_v.at(tgt);
        out.diff.emplace(pos, induced_map(f, src, it->second));
    }
    return out;
}

} // namespace

std::string to_string(Orientation o) {
    return o == Orientation::hv ? "hv" : "vh";
}

const AbelianGroup& SpectralPage::group(int p, int q) const {
    static const AbelianGroup trivial{};
    if (p < 0 || q < 0) return trivial;
    if (p + q > max_total_degree)
        throw Error("DegreeNotMaterialised",
                    "position (" + std::to_string(p) + "," + std::to_string(q) +
                        ") is beyond total degree " +
                        std::to_string(max_total_degree));
    auto it = groups.find({p, q});
    return it == groups.end() ? trivial : it->second;
}

std::string SpectralPage::table() const {
    std::ostringstream os;
    os << "E^{" << to_string(orientation) << "," << page << "}\n";
    for (int q = max_total_degree; q >= 0; --q) {
        os << "q=" << q << ":";
        for (int p = 0; p + q <= max_total_degree; ++p)
            os << "  " << group(p, q).to_string();
        os << "\n";
    }
    return os.str();
}

SpectralPage page1(const DoubleComplex& dc, Orientation o, int K) {
    Page1Data data = compute_page1(dc, o, K);
    SpectralPage page;
    page.orientation = o;
    page.page = 1;
    page.max_total_degree = K;
    for (const auto& [pos, h] : data.H) page.groups.emplace(pos, h.group());
    page.differentials = std::move(data.diff);
    return page;
}

SpectralPage page2(const DoubleComplex& dc, Orientation o, int K) {
    if (K < 1)
        throw Error("DegreeNotMaterialised",
                    "page 2 needs at least total degree 1");
    Page1Data data = compute_page1(dc, o, K);
    SpectralPage page;
    page.orientation = o;
    page.page = 2;
    page.max_total_degree = K - 1;
    for (int p = 0; p <= K - 1; ++p)
        for (int q = 0; p + q <= K - 1; ++q) {
            std::pair<int, int> pos{p, q};
            std::pair<int, int> in = (o == Orientation::hv)
                                         ? std::make_pair(p + 1, q)
                                         : std::make_pair(p, q + 1);
            std::pair<int, int> out = (o == Orientation::hv)
                                          ? std::make_pair(p - 1, q)
                                          : std::make_pair(p, q - 1);
            const IntMatrix& A = data.diff.at(in);
            int n_here = generator_count(data.H.at(pos).group());
            bool has_out = data.H.count(out) > 0 && out.first >= 0 && out.second >= 0;
            IntMatrix B = has_out ? data.diff.at(pos)
                                  : IntMatrix::zero(0, n_here);
            IntMatrix R_b = data.H.at(pos).canonical_relations();
            IntMatrix R_c = has_out ? data.H.at(out).canonical_relations()
                                    : IntMatrix::zero(0, 0);
            page.groups.emplace(pos, subquotient_group(A, B, R_b, R_c));
        }
    return page;
}

} // namespace mpx
