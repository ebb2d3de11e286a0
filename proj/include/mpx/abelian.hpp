#pragma once
#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpx/error.hpp"

namespace mpx {

/* Sparse integer matrix with arbitrary-precision entries, stored column-major
 * (map row -> value per column). Boundary matrices are very sparse; dense
 * copies are made only inside the Smith normal form routine. */
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols);
    static IntMatrix identity(int n);
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int i, int j, const mpz_class& v);
    void add(int i, int j, const mpz_class& v);
    mpz_class get(int i, int j) const;
    const std::map<int, mpz_class>& column(int j) const;

    IntMatrix operator*(const IntMatrix& other) const;
    IntMatrix operator+(const IntMatrix& other) const;
    IntMatrix operator-(const IntMatrix& other) const;
    IntMatrix negated() const;
    bool operator==(const IntMatrix& other) const;
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }
    bool is_zero() const;
    long nnz() const;

    std::vector<mpz_class> apply(const std::vector<mpz_class>& x) const;
    /* Horizontal concatenation [this | other]. */
    IntMatrix hconcat(const IntMatrix& other) const;
    /* Columns [from, to) as a new matrix. */
    IntMatrix columns_slice(int from, int to) const;
    std::string to_string() const;

private:
    int rows_, cols_;
    std::vector<std::map<int, mpz_class>> col_;
};

/* U*M*V = D with U, V unimodular and D diagonal with a divisibility chain.
 * Uinv/Vinv are tracked alongside; |det U| = |det V| = 1 is tracked through the
 * elementary operations and the product identity is re-verified on exit. */
struct SmithForm {
    IntMatrix U, D, V, Uinv, Vinv;
    mpz_class det_U, det_V; // each +1 or -1
    std::vector<mpz_class> invariant_factors; // nonzero diagonal entries, ascending divisibility
    int rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& M);

/* Columns form a basis of the integer kernel lattice of M (saturated). */
IntMatrix kernel_basis(const IntMatrix& M);
IntMatrix kernel_basis(const SmithForm& snf);

/* Particular integer solution of A x = b, or nullopt; the canonical solution
 * sets all free SNF parameters to zero. */
std::optional<std::vector<mpz_class>> solve_integer(const IntMatrix& A,
                                                    const std::vector<mpz_class>& b);
/* Solve A X = B column-by-column; nullopt if any column is unsolvable. */
std::optional<IntMatrix> solve_integer_matrix(const IntMatrix& A, const IntMatrix& B);

/* Solution of A x = b over Q/Z (A integer, b rational); entries of the result
 * are reduced to [0,1). Canonical: free parameters zero, torsion lifts taken
 * from the fractional part. */
std::optional<std::vector<mpq_class>> solve_mod1(const IntMatrix& A,
                                                 const std::vector<mpq_class>& b);

struct AbelianGroup {
    long free_rank = 0;
    std::vector<mpz_class> torsion; // d1 | d2 | ..., each >= 2

    bool operator==(const AbelianGroup& other) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string to_string() const; // "Z^r + Z/d1 + ..." or "0"
};

/* Homology at a fixed degree with generator tracking.
 * d_out: C_k -> C_{k-1} (boundary out of the ambient degree),
 * d_in : C_{k+1} -> C_k (boundary into it). H = ker(d_out)/im(d_in).
 *
 * Coordinates: K = kernel basis of d_out (ambient x z). Relations R express the
 * columns of d_in in K-coordinates; SNF U R V = D makes w = U y the canonical
 * coordinates. Generator i of the canonical presentation is column i of K*Uinv;
 * generators with invariant factor 1 are dropped from the group but kept in the
 * coordinate bookkeeping. */
class HomologyData {
public:
    HomologyData() = default;
    HomologyData(const IntMatrix& d_out, const IntMatrix& d_in);

    const AbelianGroup& group() const { return group_; }
    int ambient_dim() const { return ambient_dim_; }
    int cycle_rank() const { return kernel_.cols(); }

    /* Ambient-coordinate cycle vectors generating the group, one per canonical
     * generator (torsion generators first, then free), unit factors dropped. */
    const std::vector<std::vector<mpz_class>>& generators() const { return generators_; }

    /* Canonical coordinates of a cycle's homology class: torsion entries reduced
     * mod d_i, then free entries. Throws if x is not a cycle. */
    std::vector<mpz_class> class_of(const std::vector<mpz_class>& x) const;

    /* Diagonal relation matrix of the canonical presentation: one column per
     * generator, d_i on torsion generators, nothing on free ones. */
    IntMatrix canonical_relations() const;

private:
    int ambient_dim_ = 0;
    IntMatrix kernel_;          // ambient x z
    SmithForm kernel_snf_;      // for solving K y = x
    SmithForm rel_snf_;         // SNF of relations in K-coordinates
    std::vector<mpz_class> factors_; // invariant factor per kept generator (0 = free)
    std::vector<int> kept_rows_;     // rows of w kept as generators
    std::vector<std::vector<mpz_class>> generators_;
    AbelianGroup group_;
};

/* Matrix of the map induced on homology by a chain map block f_k (ambient
 * target x ambient source), expressed on canonical generators. */
IntMatrix induced_map(const IntMatrix& f_k, const HomologyData& source,
                      const HomologyData& target);

/* Decides whether the homomorphism given by `h` on canonical generators is an
 * isomorphism between the two finitely generated groups. */
bool is_isomorphism(const IntMatrix& h, const AbelianGroup& source,
                    const AbelianGroup& target);

/* Identity matrix viewed as a map on canonical generators. */
IntMatrix identity_hom(const AbelianGroup& g);

/* Group presented as Z^n / column span of R. */
AbelianGroup cokernel_group(const IntMatrix& R, int n);

/* ker(B)/im(A) for maps of presented groups
 *   (Z^{na}) --A--> (Z^{nb}/R_b) --B--> (Z^{nc}/R_c)
 * with B*A = 0 in the target group. Used for spectral page 2. */
AbelianGroup subquotient_group(const IntMatrix& A, const IntMatrix& B,
                               const IntMatrix& R_b, const IntMatrix& R_c);

} // namespace mpx
