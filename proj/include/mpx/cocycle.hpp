#pragma once
#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "mpx/matched_pair.hpp"

namespace mpx {

/* Element of Q/Z: a reduced rational in [0,1) under addition mod 1. The
 * paper's multiplicative circle-valued identities are transcribed additively
 * throughout this module via x -> e^{2 pi i x}. */
class Phase {
public:
    Phase() : v_(0) {}
    Phase(long num, long den);
    explicit Phase(const mpq_class& v);

    const mpq_class& value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    Phase operator+(const Phase& o) const { return Phase(v_ + o.v_); }
    Phase operator-(const Phase& o) const { return Phase(v_ - o.v_); }
    Phase operator-() const { return Phase(-v_); }
    Phase times(const mpz_class& k) const { return Phase(k * v_); }
    bool operator==(const Phase& o) const { return v_ == o.v_; }
    bool operator!=(const Phase& o) const { return v_ != o.v_; }
    bool operator<(const Phase& o) const { return v_ < o.v_; }

    std::string to_string() const; /* reduced "a/b", or "0" */

private:
    mpq_class v_;
};

/* Normalised cochains are stored sparsely: missing entries read as 0.
 * Cochain1 is keyed by morphism index; Cochain2 by a composable pair (f, g)
 * with s(f) = r(g) (for phi_11 the key is (c, d) with s(c) = r(d)). */
using Cochain1 = std::map<int, Phase>;
using Cochain2 = std::map<std::pair<int, int>, Phase>;

Phase evaluate(const Cochain1& b, int f);
Phase evaluate(const Cochain2& c, int f, int g);

struct CocycleReport {
    bool ok = true;
    std::string code;    /* IllTypedCochain / NotNormalised / CocycleViolation */
    std::string witness; /* offending entry or tuple, by name */
};

/* Checks that every key of c is a composable pair, that c vanishes when
 * either entry is an identity, and the additive cocycle identity
 *   c(a,b) + c(ab,c') = c(b,c') + c(a,bc')
 * on all composable triples. */
CocycleReport validate_categorical_2cocycle(const FiniteCategory& C,
                                            const Cochain2& c);

/* Total 2-cochain on a matched pair: phi_20 on C^2, phi_11 on C * D (keys
 * (c, d) with s(c) = r(d)), phi_02 on D^2. */
struct TotalCocycle {
    Cochain2 phi20, phi11, phi02;
};

/* The two readings of the mixed compatibility conditions. `definition` is the
 * literal additive transcription of the defining conditions:
 *   phi11(h|>l, m) - phi11(h, lm) + phi11(h, l) + phi02(l, m)
 *     - phi02(h <| (l, m)) = 0,
 *   phi20((g,h) |> l) - phi20(g, h) - phi11(h, l) + phi11(gh, l)
 *     - phi11(g, h <| l) = 0,
 * (<| the left action into D, |> the right action into C, tuple actions with
 * running restrictions). `dual_of_total_boundary` instead demands that phi
 * kill the image of the materialised total boundary d^Tot_2 exactly. With
 * this library's sign conventions the two differ by the sign of the phi_11
 * block: phi satisfies `definition` iff (phi20, -phi11, phi02) satisfies
 * `dual_of_total_boundary`. The dual mode is the one under which
 * psi2(phi) = phi o Psi_2 is provably a categorical cocycle. */
enum class TotalValidationMode { definition, dual_of_total_boundary };

CocycleReport validate_total_2cocycle(
    const MatchedPair& mp, const TotalCocycle& phi,
    TotalValidationMode mode = TotalValidationMode::definition);

/* The transfer on 2-cochains, phi o Psi_2 on composable pairs of the
 * Zappa-Szep product (morphism indices of zappa_szep(mp).cat):
 *   psi2(phi)((d1,c1), (d2,c2)) = phi20(c1 |> d2, c2) + phi11(c1, d2)
 *                                 + phi02(d1, c1 <| d2). */
Cochain2 psi2(const MatchedPair& mp, const TotalCocycle& phi);

/* (d^1 b)(z, e) = b(e) - b(ze) + b(z) on composable pairs; b must vanish on
 * identities (throws NotNormalised). */
Cochain2 coboundary(const FiniteCategory& C, const Cochain1& b);

/* Solves d^1 b = c2 - c1 over Q/Z for a normalised b; returns a witness b or
 * nullopt when the linear system is infeasible. */
std::optional<Cochain1> is_cohomologous(const FiniteCategory& C,
                                        const Cochain2& c1, const Cochain2& c2);

/* Total coboundary of a pair of normalised 1-cochains (b_C on C, b_D on D):
 * phi20 = d^1 b_C, phi02 = d^1 b_D, and
 *   phi11(h, l) = +/- (b_D(l) - b_D(h <| l) - b_C(h |> l) + b_C(h)),
 * the sign chosen so that the result validates in the requested mode. */
TotalCocycle total_coboundary(
    const MatchedPair& mp, const Cochain1& b_C, const Cochain1& b_D,
    TotalValidationMode mode = TotalValidationMode::definition);

} // namespace mpx
