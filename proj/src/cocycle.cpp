#include "mpx/cocycle.hpp"

#include <vector>

#include "mpx/complexes.hpp"

namespace mpx {

namespace {

mpq_class reduced_mod1(mpq_class v) {
    v.canonicalize();
    mpz_class floor;
    mpz_fdiv_q(floor.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    v -= mpq_class(floor);
    return v;
}

std::string pair_name(const FiniteCategory& C, int f, int g) {
    return "(" + C.morphism_names()[f] + "," + C.morphism_names()[g] + ")";
}

/* Keys must be composable pairs of valid morphism indices. */
CocycleReport check_keys(const FiniteCategory& A, const FiniteCategory& B,
                         const Cochain2& c, const std::string& label) {
    for (const auto& [key, val] : c) {
        auto [f, g] = key;
        if (f < 0 || f >= A.num_morphisms() || g < 0 || g >= B.num_morphisms())
            return {false, "IllTypedCochain",
                    label + " entry with morphism index out of range"};
        if (A.src(f) != B.dst(g))
            return {false, "IllTypedCochain",
                    label + " entry on the non-composable pair (" +
                        A.morphism_names()[f] + "," + B.morphism_names()[g] + ")"};
    }
    return {};
}

CocycleReport check_normalised(const FiniteCategory& A, const FiniteCategory& B,
                               const Cochain2& c, const std::string& label) {
    for (const auto& [key, val] : c) {
        auto [f, g] = key;
        if ((A.is_identity(f) || B.is_identity(g)) && !val.is_zero())
            return {false, "NotNormalised",
                    label + " is nonzero on the identity pair (" +
                        A.morphism_names()[f] + "," + B.morphism_names()[g] + ")"};
    }
    return {};
}

/* phi evaluated on a total-degree-2 basis element. */
Phase eval_bidegree2(const TotalCocycle& phi, int p, const BiElement& el) {
    switch (p) {
        case 0: return evaluate(phi.phi02, el.d.ms[0], el.d.ms[1]);
        case 1: return evaluate(phi.phi11, el.c.ms[0], el.d.ms[0]);
        default: return evaluate(phi.phi20, el.c.ms[0], el.c.ms[1]);
    }
}

CocycleReport validate_total_dual(const MatchedPair& mp, const TotalCocycle& phi) {
    DoubleComplex dc = matched_double_complex(mp, 2);
    ChainComplex tot = total_complex(dc, 2);
    std::vector<Phase> val2;
    for (int p = 0; p <= 2; ++p)
        for (const BiElement& el : dc.basis(p, 2 - p))
            val2.push_back(eval_bidegree2(phi, p, el));
    const IntMatrix& d = tot.boundary(2);
    for (int j = 0; j < d.cols(); ++j) {
        Phase sum;
        for (const auto& [i, coeff] : d.column(j)) sum = sum + val2[i].times(coeff);
        if (!sum.is_zero())
            return {false, "CocycleViolation",
                    "phi o d^Tot is nonzero on the total 3-chain " +
                        tot.bases[3][j]};
    }
    return {};
}

CocycleReport validate_total_definition(const MatchedPair& mp,
                                        const TotalCocycle& phi) {
    const FiniteCategory& C = mp.C();
    const FiniteCategory& D = mp.D();

    /* Factor cocycle conditions. */
    if (CocycleReport r = validate_categorical_2cocycle(C, phi.phi20); !r.ok) {
        r.witness = "phi20: " + r.witness;
        return r;
    }
    if (CocycleReport r = validate_categorical_2cocycle(D, phi.phi02); !r.ok) {
        r.witness = "phi02: " + r.witness;
        return r;
    }

    /* Mixed condition on (h; l, m): h in C over a composable D-pair. */
    for (const Tuple& t : composable_tuples(D, 2)) {
        int l = t.ms[0], m = t.ms[1];
        for (int h = 0; h < C.num_morphisms(); ++h) {
            if (!mp.defined(h, l)) continue;
            auto [lm_acted, h_res] = mp.act_on_dtuple(h, {l, m});
            Phase sum = evaluate(phi.phi11, mp.act_R(h, l), m) -
                        evaluate(phi.phi11, h, D.compose(l, m)) +
                        evaluate(phi.phi11, h, l) + evaluate(phi.phi02, l, m) -
                        evaluate(phi.phi02, lm_acted[0], lm_acted[1]);
            if (!sum.is_zero())
                return {false, "CocycleViolation",
                        "mixed (h; l, m) condition fails at (" +
                            C.morphism_names()[h] + "; " + D.morphism_names()[l] +
                            "," + D.morphism_names()[m] + ")"};
        }
    }

    /* Mixed condition on (g, h; l): a composable C-pair over l in D. */
    for (const Tuple& t : composable_tuples(C, 2)) {
        int g = t.ms[0], h = t.ms[1];
        for (int l = 0; l < D.num_morphisms(); ++l) {
            if (!mp.defined(h, l)) continue;
            auto [l_res, gh_acted] = mp.act_on_ctuple({g, h}, l);
            Phase sum = evaluate(phi.phi20, gh_acted[0], gh_acted[1]) -
                        evaluate(phi.phi20, g, h) - evaluate(phi.phi11, h, l) +
                        evaluate(phi.phi11, C.compose(g, h), l) -
                        evaluate(phi.phi11, g, mp.act_L(h, l));
            if (!sum.is_zero())
                return {false, "CocycleViolation",
                        "mixed (g, h; l) condition fails at (" +
                            C.morphism_names()[g] + "," + C.morphism_names()[h] +
                            "; " + D.morphism_names()[l] + ")"};
        }
    }
    return {};
}

} // namespace

Phase::Phase(long num, long den) : v_(reduced_mod1(mpq_class(num, den))) {}
Phase::Phase(const mpq_class& v) : v_(reduced_mod1(v)) {}

std::string Phase::to_string() const { return v_.get_str(); }

Phase evaluate(const Cochain1& b, int f) {
    auto it = b.find(f);
    return it == b.end() ? Phase() : it->second;
}

Phase evaluate(const Cochain2& c, int f, int g) {
    auto it = c.find({f, g});
    return it == c.end() ? Phase() : it->second;
}

CocycleReport validate_categorical_2cocycle(const FiniteCategory& C,
                                            const Cochain2& c) {
    if (CocycleReport r = check_keys(C, C, c, "cochain"); !r.ok) return r;
    if (CocycleReport r = check_normalised(C, C, c, "cochain"); !r.ok) return r;
    for (const Tuple& t : composable_tuples(C, 3)) {
        int a = t.ms[0], b = t.ms[1], cp = t.ms[2];
        Phase lhs = evaluate(c, a, b) + evaluate(c, C.compose(a, b), cp);
        Phase rhs = evaluate(c, b, cp) + evaluate(c, a, C.compose(b, cp));
        if (lhs != rhs)
            return {false, "CocycleViolation",
                    "cocycle identity fails on (" + C.morphism_names()[a] + "," +
                        C.morphism_names()[b] + "," + C.morphism_names()[cp] + ")"};
    }
    return {};
}

CocycleReport validate_total_2cocycle(const MatchedPair& mp,
                                      const TotalCocycle& phi,
                                      TotalValidationMode mode) {
    const FiniteCategory& C = mp.C();
    const FiniteCategory& D = mp.D();
    if (CocycleReport r = check_keys(C, C, phi.phi20, "phi20"); !r.ok) return r;
    if (CocycleReport r = check_keys(C, D, phi.phi11, "phi11"); !r.ok) return r;
    if (CocycleReport r = check_keys(D, D, phi.phi02, "phi02"); !r.ok) return r;
    if (CocycleReport r = check_normalised(C, C, phi.phi20, "phi20"); !r.ok)
        return r;
    if (CocycleReport r = check_normalised(C, D, phi.phi11, "phi11"); !r.ok)
        return r;
    if (CocycleReport r = check_normalised(D, D, phi.phi02, "phi02"); !r.ok)
        return r;
    return mode == TotalValidationMode::definition
               ? validate_total_definition(mp, phi)
               : validate_total_dual(mp, phi);
}

Cochain2 psi2(const MatchedPair& mp, const TotalCocycle& phi) {
    ZappaSzep zs = zappa_szep(mp);
    Cochain2 out;
    for (const Tuple& t : composable_tuples(zs.cat, 2)) {
        auto [d1, c1] = zs.pair_of[t.ms[0]];
        auto [d2, c2] = zs.pair_of[t.ms[1]];
        Phase v = evaluate(phi.phi20, mp.act_R(c1, d2), c2) +
                  evaluate(phi.phi11, c1, d2) +
                  evaluate(phi.phi02, d1, mp.act_L(c1, d2));
        if (!v.is_zero()) out.emplace(std::make_pair(t.ms[0], t.ms[1]), v);
    }
    return out;
}

Cochain2 coboundary(const FiniteCategory& C, const Cochain1& b) {
    for (const auto& [f, val] : b) {
        if (f < 0 || f >= C.num_morphisms())
            throw Error("IllTypedCochain", "1-cochain index out of range");
        if (C.is_identity(f) && !val.is_zero())
            throw Error("NotNormalised", "1-cochain is nonzero on the identity " +
                                             C.morphism_names()[f]);
    }
    Cochain2 out;
    for (const Tuple& t : composable_tuples(C, 2)) {
        int z = t.ms[0], e = t.ms[1];
        Phase v = evaluate(b, e) - evaluate(b, C.compose(z, e)) + evaluate(b, z);
        if (!v.is_zero()) out.emplace(std::make_pair(z, e), v);
    }
    return out;
}

std::optional<Cochain1> is_cohomologous(const FiniteCategory& C,
                                        const Cochain2& c1, const Cochain2& c2) {
    std::vector<int> vars;
    std::vector<int> col_of(C.num_morphisms(), -1);
    for (int f = 0; f < C.num_morphisms(); ++f)
        if (!C.is_identity(f)) {
            col_of[f] = static_cast<int>(vars.size());
            vars.push_back(f);
        }
    std::vector<Tuple> pairs = composable_tuples(C, 2);
    IntMatrix A(static_cast<int>(pairs.size()), static_cast<int>(vars.size()));
    std::vector<mpq_class> rhs(pairs.size());
    for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
        int z = pairs[i].ms[0], e = pairs[i].ms[1];
        for (auto [f, coeff] : {std::make_pair(e, 1), std::make_pair(C.compose(z, e), -1),
                                std::make_pair(z, 1)})
            if (col_of[f] >= 0) A.add(i, col_of[f], coeff);
        rhs[i] = (evaluate(c2, z, e) - evaluate(c1, z, e)).value();
    }
    auto x = solve_mod1(A, rhs);
    if (!x) return std::nullopt;
    Cochain1 b;
    for (int k = 0; k < static_cast<int>(vars.size()); ++k)
        if ((*x)[k] != 0) b.emplace(vars[k], Phase((*x)[k]));
    return b;
}

TotalCocycle total_coboundary(const MatchedPair& mp, const Cochain1& b_C,
                              const Cochain1& b_D, TotalValidationMode mode) {
    const FiniteCategory& C = mp.C();
    const FiniteCategory& D = mp.D();
    TotalCocycle phi;
    phi.phi20 = coboundary(C, b_C);
    phi.phi02 = coboundary(D, b_D);
    for (int h = 0; h < C.num_morphisms(); ++h)
        for (int l = 0; l < D.num_morphisms(); ++l) {
            if (!mp.defined(h, l)) continue;
            Phase v = evaluate(b_D, l) - evaluate(b_D, mp.act_L(h, l)) -
                      evaluate(b_C, mp.act_R(h, l)) + evaluate(b_C, h);
            if (mode == TotalValidationMode::definition) v = -v;
            if (!v.is_zero()) phi.phi11.emplace(std::make_pair(h, l), v);
        }
    return phi;
}

} // namespace mpx
