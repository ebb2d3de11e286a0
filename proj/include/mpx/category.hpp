#pragma once
#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "mpx/error.hpp"

namespace mpx {

/* Raw, unvalidated category description mirroring the JSON schema. */
struct MorphismSpec {
    std::string id, src, dst;
};
struct RawCategory {
    std::vector<std::string> objects;
    std::vector<MorphismSpec> morphisms;
    std::map<std::string, std::string> identities; // object -> identity morphism id
    std::vector<std::array<std::string, 3>> compose; // [f, g, f∘g]
};

/* Validated finite category. Objects and morphisms are referred to by their
 * index in the canonical enumeration order (the input order); compose(f, g) is
 * "f after g": defined iff src(f) = dst(g), matching the paper's composable
 * pair (c1, c2) with s(c1) = r(c2) and result c1c2. */
class FiniteCategory {
public:
    const std::vector<std::string>& object_names() const { return object_names_; }
    const std::vector<std::string>& morphism_names() const { return morphism_names_; }
    int num_objects() const { return static_cast<int>(object_names_.size()); }
    int num_morphisms() const { return static_cast<int>(morphism_names_.size()); }

    int src(int m) const { return src_[m]; }
    int dst(int m) const { return dst_[m]; }
    int identity_of(int obj) const { return identity_[obj]; }
    bool is_identity(int m) const { return identity_[src_[m]] == m; }
    bool composable(int f, int g) const { return src_[f] == dst_[g]; }
    int compose(int f, int g) const;

    int object_index(const std::string& name) const;
    int morphism_index(const std::string& name) const;

    /* Construction is via validate_category and the named builders only. */
    friend FiniteCategory validate_category(const RawCategory& raw);

private:
    std::vector<std::string> object_names_, morphism_names_;
    std::vector<int> src_, dst_, identity_;
    std::vector<int> table_; // num_morphisms^2, -1 where undefined
};

FiniteCategory validate_category(const RawCategory& raw);

/* A composable tuple; degree-0 tuples are objects (ms empty, obj set).
 * Adjacent entries satisfy src(ms[i]) = dst(ms[i+1]). */
struct Tuple {
    std::vector<int> ms;
    int obj = -1;
    auto operator<=>(const Tuple&) const = default;
    int degree() const { return static_cast<int>(ms.size()); }
};

int tuple_r(const FiniteCategory& C, const Tuple& t); // range = dst of first entry
int tuple_s(const FiniteCategory& C, const Tuple& t); // source = src of last entry
std::string tuple_label(const FiniteCategory& C, const Tuple& t);

inline constexpr long kDefaultEnumerationCap = 5'000'000;

/* All composable k-tuples in canonical lexicographic order by morphism index
 * (k = 0: the objects). Throws DegreeTooLarge beyond the cap. */
std::vector<Tuple> composable_tuples(const FiniteCategory& C, int k,
                                     long cap = kDefaultEnumerationCap);

struct DirectedGraph {
    std::vector<std::string> vertices;
    struct Edge {
        std::string id, src, dst;
    };
    std::vector<Edge> edges;
};

/* Path category of a finite acyclic directed graph: objects = vertices,
 * morphisms = all directed paths (including length-0 vertex paths),
 * composition = concatenation. Throws CyclicGraph naming one cycle. */
FiniteCategory path_category(const DirectedGraph& g);

/* One-object category of a finite monoid; table[i][j] is the index of the
 * product x_i x_j, `unit` is the index of the neutral element. */
FiniteCategory monoid_category(const std::vector<std::string>& element_names,
                               const std::vector<std::vector<int>>& table, int unit);

FiniteCategory product_category(const FiniteCategory& A, const FiniteCategory& B);

FiniteCategory discrete_category(const std::vector<std::string>& objects);

} // namespace mpx
