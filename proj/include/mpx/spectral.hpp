#pragma once
#include <map>
#include <string>

#include "mpx/complexes.hpp"

namespace mpx {

/* Orientation of the spectral sequence of the matched double complex:
 * hv takes vertical (D-direction) homology first, vh horizontal first. */
enum class Orientation { hv, vh };

std::string to_string(Orientation o);

/* A page of the spectral sequence. Page-1 groups cover p + q <= the stored
 * max_total_degree; page-2 groups cover one total degree less (the incoming
 * page-1 differential must be materialised to form the subquotient).
 *
 * Index placement: E^{hv,1}_{p,q} is the vertical homology H^v_{p,q} of
 * column p at row q; E^{vh,1}_{p,q} is the horizontal homology of row q at
 * column p. Page-1 differentials are keyed by their source position and map
 * (p,q) -> (p-1,q) for hv and (p,q) -> (p,q-1) for vh; the matrices act on
 * the canonical generators of the groups. */
struct SpectralPage {
    Orientation orientation = Orientation::hv;
    int page = 1;
    int max_total_degree = 0;
    std::map<std::pair<int, int>, AbelianGroup> groups;
    std::map<std::pair<int, int>, IntMatrix> differentials; /* page 1 only */

    /* Trivial for negative indices; throws DegreeNotMaterialised beyond the
     * materialised range. */
    const AbelianGroup& group(int p, int q) const;

    /* Text grid, rows q descending, one group string per cell. */
    std::string table() const;
};

/* First page with induced differentials; requires K <= dc.max_total_degree.
 * Throws DegreeNotMaterialised otherwise. */
SpectralPage page1(const DoubleComplex& dc, Orientation o, int K);

/* Second page (homology of page 1 under the induced differentials); groups
 * cover p + q <= K - 1. Requires 1 <= K <= dc.max_total_degree. */
SpectralPage page2(const DoubleComplex& dc, Orientation o, int K);

} // namespace mpx
