#include "mpx/abelian.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace mpx {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {
    if (rows < 0 || cols < 0) throw Error("ShapeMismatch", "negative matrix dimension");
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

void IntMatrix::set(int i, int j, const mpz_class& v) {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw Error("ShapeMismatch", "matrix index out of range");
    if (v == 0)
        col_[j].erase(i);
    else
        col_[j][i] = v;
}

void IntMatrix::add(int i, int j, const mpz_class& v) {
    if (v == 0) return;
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw Error("ShapeMismatch", "matrix index out of range");
    auto it = col_[j].find(i);
    if (it == col_[j].end()) {
        col_[j][i] = v;
    } else {
        it->second += v;
        if (it->second == 0) col_[j].erase(it);
    }
}

mpz_class IntMatrix::get(int i, int j) const {
    auto it = col_[j].find(i);
    return it == col_[j].end() ? mpz_class(0) : it->second;
}

const std::map<int, mpz_class>& IntMatrix::column(int j) const { return col_[j]; }

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
    if (cols_ != other.rows_)
        throw Error("ShapeMismatch", "matrix product dimension mismatch");
    IntMatrix out(rows_, other.cols_);
    for (int j = 0; j < other.cols_; ++j) {
        std::map<int, mpz_class> acc;
        for (const auto& [k, bkj] : other.col_[j]) {
            for (const auto& [i, aik] : col_[k]) acc[i] += aik * bkj;
        }
        for (auto& [i, v] : acc)
            if (v != 0) out.col_[j].emplace(i, std::move(v));
    }
    return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error("ShapeMismatch", "matrix sum dimension mismatch");
    IntMatrix out = *this;
    for (int j = 0; j < cols_; ++j)
        for (const auto& [i, v] : other.col_[j]) out.add(i, j, v);
    return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const { return *this + other.negated(); }

IntMatrix IntMatrix::negated() const {
    IntMatrix out = *this;
    for (auto& c : out.col_)
        for (auto& [i, v] : c) v = -v;
    return out;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && col_ == other.col_;
}

bool IntMatrix::is_zero() const {
    for (const auto& c : col_)
        if (!c.empty()) return false;
    return true;
}

long IntMatrix::nnz() const {
    long n = 0;
    for (const auto& c : col_) n += static_cast<long>(c.size());
    return n;
}

std::vector<mpz_class> IntMatrix::apply(const std::vector<mpz_class>& x) const {
    if (static_cast<int>(x.size()) != cols_)
        throw Error("ShapeMismatch", "matrix-vector dimension mismatch");
    std::vector<mpz_class> y(rows_, 0);
    for (int j = 0; j < cols_; ++j) {
        if (x[j] == 0) continue;
        for (const auto& [i, v] : col_[j]) y[i] += v * x[j];
    }
    return y;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
    if (rows_ != other.rows_)
        throw Error("ShapeMismatch", "hconcat row mismatch");
    IntMatrix out(rows_, cols_ + other.cols_);
    out.col_ = col_;
    out.col_.insert(out.col_.end(), other.col_.begin(), other.col_.end());
    return out;
}

IntMatrix IntMatrix::columns_slice(int from, int to) const {
    IntMatrix out(rows_, to - from);
    for (int j = from; j < to; ++j) out.col_[j - from] = col_[j];
    return out;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < cols_; ++j) os << get(i, j) << (j + 1 < cols_ ? " " : "");
        os << (i + 1 < rows_ ? "\n" : "]");
    }
    return os.str();
}

namespace {

/* Dense working state for the Smith reduction, maintaining W = U * M * V,
 * U * Uinv = I, V * Vinv = I throughout. */
struct SmithWork {
    int r, c;
    std::vector<std::vector<mpz_class>> W, U, Uinv, V, Vinv;
    mpz_class detU = 1, detV = 1;

    explicit SmithWork(const IntMatrix& M) : r(M.rows()), c(M.cols()) {
        W.assign(r, std::vector<mpz_class>(c, 0));
        for (int j = 0; j < c; ++j)
            for (const auto& [i, v] : M.column(j)) W[i][j] = v;
        U.assign(r, std::vector<mpz_class>(r, 0));
        Uinv = U;
        for (int i = 0; i < r; ++i) U[i][i] = Uinv[i][i] = 1;
        V.assign(c, std::vector<mpz_class>(c, 0));
        Vinv = V;
        for (int i = 0; i < c; ++i) V[i][i] = Vinv[i][i] = 1;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        W[i].swap(W[j]);
        U[i].swap(U[j]);
        for (int k = 0; k < r; ++k) std::swap(Uinv[k][i], Uinv[k][j]);
        detU = -detU;
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < r; ++k) std::swap(W[k][i], W[k][j]);
        for (int k = 0; k < c; ++k) std::swap(V[k][i], V[k][j]);
        Vinv[i].swap(Vinv[j]);
        detV = -detV;
    }
    /* row i += q * row j */
    void add_row(int i, int j, const mpz_class& q) {
        if (q == 0) return;
        for (int k = 0; k < c; ++k) W[i][k] += q * W[j][k];
        for (int k = 0; k < r; ++k) U[i][k] += q * U[j][k];
        for (int k = 0; k < r; ++k) Uinv[k][j] -= q * Uinv[k][i];
    }
    /* col i += q * col j */
    void add_col(int i, int j, const mpz_class& q) {
        if (q == 0) return;
        for (int k = 0; k < r; ++k) W[k][i] += q * W[k][j];
        for (int k = 0; k < c; ++k) V[k][i] += q * V[k][j];
        for (int k = 0; k < c; ++k) Vinv[j][k] -= q * Vinv[i][k];
    }
    void negate_row(int i) {
        for (auto& x : W[i]) x = -x;
        for (auto& x : U[i]) x = -x;
        for (int k = 0; k < r; ++k) Uinv[k][i] = -Uinv[k][i];
        detU = -detU;
    }

    bool find_min_pivot(int t, int& pi, int& pj) const {
        bool found = false;
        mpz_class best;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j) {
                if (W[i][j] == 0) continue;
                mpz_class a = abs(W[i][j]);
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }

    bool is_lone(int t) const {
        for (int i = t + 1; i < r; ++i)
            if (W[i][t] != 0) return false;
        for (int j = t + 1; j < c; ++j)
            if (W[t][j] != 0) return false;
        return true;
    }
};

IntMatrix to_sparse(const std::vector<std::vector<mpz_class>>& d, int r, int c) {
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (d[i][j] != 0) m.set(i, j, d[i][j]);
    return m;
}

} // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
    SmithWork w(M);
    const int nmin = std::min(w.r, w.c);
    int t = 0;
    for (; t < nmin; ++t) {
        int pi, pj;
        if (!w.find_min_pivot(t, pi, pj)) break;
        for (;;) {
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            while (!w.is_lone(t)) {
                for (int i = t + 1; i < w.r; ++i)
                    if (w.W[i][t] != 0) w.add_row(i, t, -mpz_class(w.W[i][t] / w.W[t][t]));
                for (int j = t + 1; j < w.c; ++j)
                    if (w.W[t][j] != 0) w.add_col(j, t, -mpz_class(w.W[t][j] / w.W[t][t]));
                if (!w.is_lone(t)) {
                    w.find_min_pivot(t, pi, pj);
                    w.swap_rows(t, pi);
                    w.swap_cols(t, pj);
                }
            }
            /* Divisibility pass: the pivot must divide the rest of the submatrix. */
            bool fixed = true;
            for (int i = t + 1; i < w.r && fixed; ++i)
                for (int j = t + 1; j < w.c && fixed; ++j)
                    if (w.W[i][j] % w.W[t][t] != 0) {
                        w.add_row(t, i, 1);
                        pi = t;
                        pj = t;
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (w.W[t][t] < 0) w.negate_row(t);
    }

    SmithForm out;
    out.U = to_sparse(w.U, w.r, w.r);
    out.Uinv = to_sparse(w.Uinv, w.r, w.r);
    out.V = to_sparse(w.V, w.c, w.c);
    out.Vinv = to_sparse(w.Vinv, w.c, w.c);
    out.D = to_sparse(w.W, w.r, w.c);
    out.det_U = w.detU;
    out.det_V = w.detV;
    out.rank = t;
    for (int i = 0; i < t; ++i) out.invariant_factors.push_back(w.W[i][i]);

    if (out.U * M * out.V != out.D)
        throw Error("SmithVerificationFailed", "U*M*V != D");
    if (abs(out.det_U) != 1 || abs(out.det_V) != 1)
        throw Error("SmithVerificationFailed", "transformation not unimodular");
    return out;
}

IntMatrix kernel_basis(const SmithForm& snf) {
    return snf.V.columns_slice(snf.rank, snf.V.cols());
}

IntMatrix kernel_basis(const IntMatrix& M) { return kernel_basis(smith_normal_form(M)); }

namespace {

std::optional<std::vector<mpz_class>> solve_with_snf(const SmithForm& snf,
                                                     const std::vector<mpz_class>& b) {
    const int r = snf.U.cols(), c = snf.V.rows();
    if (static_cast<int>(b.size()) != r)
        throw Error("ShapeMismatch", "solve_integer rhs size mismatch");
    std::vector<mpz_class> ub = snf.U.apply(b);
    std::vector<mpz_class> y(c, 0);
    for (int i = 0; i < r; ++i) {
        if (i < snf.rank) {
            const mpz_class& d = snf.invariant_factors[i];
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return snf.V.apply(y);
}

} // namespace

std::optional<std::vector<mpz_class>> solve_integer(const IntMatrix& A,
                                                    const std::vector<mpz_class>& b) {
    return solve_with_snf(smith_normal_form(A), b);
}

std::optional<IntMatrix> solve_integer_matrix(const IntMatrix& A, const IntMatrix& B) {
    if (A.rows() != B.rows())
        throw Error("ShapeMismatch", "solve_integer_matrix row mismatch");
    SmithForm snf = smith_normal_form(A);
    IntMatrix X(A.cols(), B.cols());
    for (int j = 0; j < B.cols(); ++j) {
        std::vector<mpz_class> b(B.rows(), 0);
        for (const auto& [i, v] : B.column(j)) b[i] = v;
        auto x = solve_with_snf(snf, b);
        if (!x) return std::nullopt;
        for (int i = 0; i < A.cols(); ++i)
            if ((*x)[i] != 0) X.set(i, j, (*x)[i]);
    }
    return X;
}

namespace {

mpq_class frac_part(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    mpq_class out = x - fl;
    out.canonicalize();
    return out;
}

} // namespace

std::optional<std::vector<mpq_class>> solve_mod1(const IntMatrix& A,
                                                 const std::vector<mpq_class>& b) {
    if (static_cast<int>(b.size()) != A.rows())
        throw Error("ShapeMismatch", "solve_mod1 rhs size mismatch");
    SmithForm snf = smith_normal_form(A);
    /* U b, exactly over Q. */
    std::vector<mpq_class> ub(A.rows(), 0);
    for (int j = 0; j < snf.U.cols(); ++j) {
        if (b[j] == 0) continue;
        for (const auto& [i, v] : snf.U.column(j)) ub[i] += mpq_class(v) * b[j];
    }
    std::vector<mpq_class> y(A.cols(), 0);
    for (int i = 0; i < A.rows(); ++i) {
        if (i < snf.rank) {
            y[i] = frac_part(ub[i]) / mpq_class(snf.invariant_factors[i]);
            y[i].canonicalize();
        } else if (frac_part(ub[i]) != 0) {
            return std::nullopt; /* needs an integer value but is fractional */
        }
    }
    std::vector<mpq_class> x(A.cols(), 0);
    for (int j = 0; j < snf.V.cols(); ++j) {
        if (y[j] == 0) continue;
        for (const auto& [i, v] : snf.V.column(j)) x[i] += mpq_class(v) * y[j];
    }
    for (auto& xi : x) xi = frac_part(xi);
    return x;
}

std::string AbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) {
        os << "Z";
        first = false;
    } else if (free_rank > 1) {
        os << "Z^" << free_rank;
        first = false;
    }
    for (const auto& d : torsion) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    return os.str();
}

HomologyData::HomologyData(const IntMatrix& d_out, const IntMatrix& d_in) {
    if (d_out.cols() != d_in.rows())
        throw Error("ShapeMismatch", "homology boundary shapes do not match");
    if (!(d_out * d_in).is_zero())
        throw Error("NotAComplex", "d o d != 0 at requested degree");
    ambient_dim_ = d_out.cols();
    SmithForm out_snf = smith_normal_form(d_out);
    kernel_ = kernel_basis(out_snf);
    kernel_snf_ = smith_normal_form(kernel_);

    auto R = solve_integer_matrix(kernel_, d_in);
    if (!R) throw Error("NotAComplex", "image does not lie in the kernel");
    rel_snf_ = smith_normal_form(*R);

    const int z = kernel_.cols();
    IntMatrix gen_mat = kernel_ * rel_snf_.Uinv; /* ambient columns per w-coordinate */
    for (int i = 0; i < z; ++i) {
        mpz_class d = i < rel_snf_.rank ? rel_snf_.invariant_factors[i] : mpz_class(0);
        if (d == 1) continue;
        kept_rows_.push_back(i);
        factors_.push_back(d);
        std::vector<mpz_class> g(ambient_dim_, 0);
        for (const auto& [row, v] : gen_mat.column(i)) g[row] = v;
        generators_.push_back(std::move(g));
    }
    for (const auto& d : factors_) {
        if (d == 0)
            ++group_.free_rank;
        else
            group_.torsion.push_back(d);
    }
}

std::vector<mpz_class> HomologyData::class_of(const std::vector<mpz_class>& x) const {
    auto y = solve_with_snf(kernel_snf_, x);
    if (!y) throw Error("NotACycle", "vector is not in the kernel of the boundary");
    std::vector<mpz_class> w = rel_snf_.U.apply(*y);
    std::vector<mpz_class> out;
    out.reserve(kept_rows_.size());
    for (size_t k = 0; k < kept_rows_.size(); ++k) {
        mpz_class v = w[kept_rows_[k]];
        if (factors_[k] != 0) {
            mpz_class red;
            mpz_fdiv_r(red.get_mpz_t(), v.get_mpz_t(), factors_[k].get_mpz_t());
            v = red;
        }
        out.push_back(v);
    }
    return out;
}

IntMatrix HomologyData::canonical_relations() const {
    int torsion_count = static_cast<int>(group_.torsion.size());
    IntMatrix R(static_cast<int>(kept_rows_.size()), torsion_count);
    int j = 0;
    for (size_t i = 0; i < factors_.size(); ++i)
        if (factors_[i] != 0) R.set(static_cast<int>(i), j++, factors_[i]);
    return R;
}

IntMatrix induced_map(const IntMatrix& f_k, const HomologyData& source,
                      const HomologyData& target) {
    if (f_k.cols() != source.ambient_dim() || f_k.rows() != target.ambient_dim())
        throw Error("ShapeMismatch", "induced_map chain block shape mismatch");
    const auto& gens = source.generators();
    IntMatrix h(static_cast<int>(target.generators().size()),
                static_cast<int>(gens.size()));
    for (size_t j = 0; j < gens.size(); ++j) {
        auto cls = target.class_of(f_k.apply(gens[j]));
        for (size_t i = 0; i < cls.size(); ++i)
            if (cls[i] != 0) h.set(static_cast<int>(i), static_cast<int>(j), cls[i]);
    }
    return h;
}

namespace {

IntMatrix diag_relations(const AbelianGroup& g) {
    int n = static_cast<int>(g.torsion.size()) + static_cast<int>(g.free_rank);
    IntMatrix R(n, static_cast<int>(g.torsion.size()));
    for (size_t i = 0; i < g.torsion.size(); ++i)
        R.set(static_cast<int>(i), static_cast<int>(i), g.torsion[i]);
    return R;
}

} // namespace

IntMatrix identity_hom(const AbelianGroup& g) {
    return IntMatrix::identity(static_cast<int>(g.torsion.size()) +
                               static_cast<int>(g.free_rank));
}

AbelianGroup cokernel_group(const IntMatrix& R, int n) {
    if (R.rows() != n) throw Error("ShapeMismatch", "cokernel ambient mismatch");
    SmithForm snf = smith_normal_form(R);
    AbelianGroup g;
    g.free_rank = n - snf.rank;
    for (const auto& d : snf.invariant_factors)
        if (d > 1) g.torsion.push_back(d);
    return g;
}

bool is_isomorphism(const IntMatrix& h, const AbelianGroup& source,
                    const AbelianGroup& target) {
    IntMatrix R1 = diag_relations(source), R2 = diag_relations(target);
    const int ns = R1.rows(), nt = R2.rows();
    if (h.cols() != ns || h.rows() != nt)
        throw Error("ShapeMismatch", "is_isomorphism generator-count mismatch");
    /* Surjective iff Z^nt / (im h + im R2) is trivial. */
    if (!cokernel_group(h.hconcat(R2), nt).is_trivial()) return false;
    /* Injective iff every x with h x in im R2 lies in im R1. */
    IntMatrix L = kernel_basis(h.hconcat(R2.negated()));
    for (int j = 0; j < L.cols(); ++j) {
        for (size_t i = 0; i < source.torsion.size(); ++i) {
            if (L.get(static_cast<int>(i), j) % source.torsion[i] != 0) return false;
        }
        for (int i = static_cast<int>(source.torsion.size()); i < ns; ++i)
            if (L.get(i, j) != 0) return false;
    }
    return true;
}

AbelianGroup subquotient_group(const IntMatrix& A, const IntMatrix& B,
                               const IntMatrix& R_b, const IntMatrix& R_c) {
    const int nb = B.cols();
    if (A.rows() != nb || R_b.rows() != nb || B.rows() != R_c.rows())
        throw Error("ShapeMismatch", "subquotient_group shape mismatch");
    /* Generators of the lattice {x : Bx in im R_c}. */
    IntMatrix K = kernel_basis(B.hconcat(R_c));
    IntMatrix P(nb, K.cols());
    for (int j = 0; j < K.cols(); ++j)
        for (const auto& [i, v] : K.column(j))
            if (i < nb) P.set(i, j, v);
    /* Express the subgroup to kill in the generators of the lattice. */
    auto Y = solve_integer_matrix(P, A.hconcat(R_b));
    if (!Y) throw Error("NotAComplex", "relations do not lie in the kernel lattice");
    IntMatrix S = kernel_basis(P); /* syzygies among the chosen generators */
    return cokernel_group(Y->hconcat(S), P.cols());
}

} // namespace mpx
