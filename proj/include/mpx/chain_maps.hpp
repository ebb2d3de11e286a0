#pragma once
#include <string>
#include <vector>

#include "mpx/complexes.hpp"

namespace mpx {

/* A chain map stored as one integer matrix per degree (0..K+1 where K is the
 * common materialised degree); source and target complexes are carried along
 * so maps can be composed and verified. */
struct ChainMap {
    ChainComplex source, target;
    std::vector<IntMatrix> blocks; /* blocks[k]: source degree k -> target degree k */
    bool verified = false;
};

struct ChainMapReport {
    bool ok = true;
    std::string witness; /* failing degree and basis element, empty when ok */
};

/* Checks target.d_k . f_{k+1} = f_k . source.d_k on all materialised degrees;
 * sets f.verified on success. */
ChainMapReport verify_chain_map(ChainMap& f);

/* Composite f o g (g first); requires g.target and f.source to have identical
 * bases. Throws ShapeMismatch otherwise. */
ChainMap compose(const ChainMap& f, const ChainMap& g);

/* Eilenberg-Zilber map from the total complex to the diagonal complex,
 * assembled from shuffle-indexed degeneracies. */
ChainMap eilenberg_zilber(const MatchedPair& mp, int K,
                          long cap = kDefaultEnumerationCap);

/* Alexander-Whitney map from the diagonal complex to the total complex,
 * assembled from the vertical 0-faces and top-index horizontal faces. */
ChainMap alexander_whitney(const MatchedPair& mp, int K,
                           long cap = kDefaultEnumerationCap);

/* Pi from the diagonal complex to the categorical complex of the Zappa-Szep
 * product, by iterated crossings of adjacent (c, d) pairs. */
ChainMap pi_map(const MatchedPair& mp, int K, long cap = kDefaultEnumerationCap);

/* Psi from the categorical complex of the Zappa-Szep product to the total
 * complex, via the tau normalisation of each split of the tuple. */
ChainMap psi_map(const MatchedPair& mp, int K, long cap = kDefaultEnumerationCap);

} // namespace mpx
