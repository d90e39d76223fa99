#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace cayleyiso {

/// Canonically encoded group element. Two words represent the same element
/// iff their encodings compare equal, so hashing/equality on the raw code is
/// all the element comparison the library ever needs.
struct Element {
    std::vector<int32_t> code;
    bool operator==(const Element& o) const { return code == o.code; }
    bool operator!=(const Element& o) const { return code != o.code; }
    /// Canonical total order: shorter codes first, then lexicographic.
    bool operator<(const Element& o) const {
        if (code.size() != o.code.size()) return code.size() < o.code.size();
        return code < o.code;
    }
};

struct ElementHash {
    size_t operator()(const Element& e) const {
        uint64_t h = 1469598103934665603ull;
        for (int32_t v : e.code) {
            uint32_t u = (uint32_t)v;
            for (int i = 0; i < 4; ++i) {
                h ^= (u >> (8 * i)) & 0xff;
                h *= 1099511628211ull;
            }
        }
        return (size_t)h;
    }
};

using ElementSet = std::unordered_set<Element, ElementHash>;
template <class T>
using ElementMap = std::unordered_map<Element, T, ElementHash>;

/// One letter of a word: a generator index and an inversion flag.
struct Letter {
    int gen = 0;
    bool inverse = false;
};
using Word = std::vector<Letter>;

enum class GroupKind {
    free_group,
    free_abelian,
    cyclic,
    finite_table,
    permutation,
    free_product_cyclic,
    lamplighter,
};

std::string kind_name(GroupKind k);

/// A group with a fixed generating alphabet and canonical element encodings.
/// Immutable after construction; all operations are const and thread-safe.
class Group {
public:
    static Group free_group(int rank);
    static Group free_abelian(int rank);
    static Group cyclic(long n);
    /// table[g][h] = g*h, 0-based indices. Validated: identity exists,
    /// inverses exist, associativity (full for n <= 64, else 10^4 seeded
    /// random triples).
    static Group finite_table(std::vector<std::vector<int>> table,
                              uint64_t validation_seed = 1);
    static Group finite_table_from_csv(const std::string& path,
                                       uint64_t validation_seed = 1);
    /// Permutation group on {0..degree-1} generated by the given image lists.
    static Group permutation(int degree, std::vector<std::vector<int>> gens);
    /// Free product of cyclic groups of the given orders (each >= 2).
    static Group free_product_cyclic(std::vector<int> orders);
    /// Wreath-type lamplighter Z/2 wr Z with generators t (move) and a (toggle).
    static Group lamplighter();

    GroupKind kind() const { return kind_; }
    int generator_count() const { return (int)gen_names_.size(); }
    const std::vector<std::string>& generator_names() const { return gen_names_; }
    int free_rank() const { return rank_; }

    Element identity() const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;
    Element generator(int i) const;

    /// Monoid-homomorphic evaluation of a word in the alphabet.
    Element evaluate(const Word& w) const;
    /// Parses letters of the form "a" / "a^-1" against the alphabet.
    Word parse_word(const std::vector<std::string>& letters) const;

    bool is_finite() const;
    /// Number of elements; only valid for finite backends.
    long order() const;
    /// All elements of a finite backend, in canonical order.
    std::vector<Element> elements() const;

    std::string element_str(const Element& e) const;
    std::string describe() const;
    /// Stable string describing the backend; used for cache keys and report echo.
    std::string descriptor() const;

private:
    Group() = default;
    void validate_table(uint64_t seed);

    GroupKind kind_ = GroupKind::cyclic;
    int rank_ = 0;                          // free / free_abelian
    long n_ = 1;                            // cyclic
    std::vector<std::vector<int>> table_;   // finite_table
    std::vector<int> inv_table_;
    int degree_ = 0;                        // permutation
    std::vector<std::vector<int>> perm_gens_;
    std::vector<int> orders_;               // free_product_cyclic
    std::vector<std::string> gen_names_;
};

/// A finite inverse-closed duplicate-free subset of a group, kept in
/// canonical order. May contain the identity (its Cayley edges are loops).
struct SymmetricSet {
    std::vector<Element> elems;
    bool contains_identity = false;
    size_t size() const { return elems.size(); }
};

/// Validates symmetry/duplicates and builds the canonical SymmetricSet.
SymmetricSet make_symmetric_set(const Group& g, std::vector<Element> elems);

/// Elements at word-distance <= radius from the identity, breadth-first,
/// deterministic: level by level, discovery order within a level.
std::vector<Element> ball(const Group& g, const SymmetricSet& s, int radius);

/// Same BFS, but returns the distance map as well.
std::vector<std::pair<Element, int>> ball_with_distances(const Group& g,
                                                         const SymmetricSet& s,
                                                         int radius);

SymmetricSet symmetric_from_words(const Group& g, const std::vector<Word>& words);
SymmetricSet symmetric_ball(const Group& g, int radius);      // ball(R) \ {e} over standard letters
SymmetricSet symmetric_sphere(const Group& g, int radius);    // sphere(R) over standard letters
SymmetricSet symmetric_power(const Group& g, const SymmetricSet& s, int k);
/// Seeded random inverse-closed subset of ball(radius) \ {e}; at least
/// `size` elements (one extra possible when a pair closes the set).
SymmetricSet symmetric_random(const Group& g, int radius, int size, uint64_t seed,
                              bool with_identity = false);

/// The generating set the letters themselves induce: all generators and
/// their inverses (= ball(1) minus identity).
SymmetricSet standard_set(const Group& g);
/// True when s equals the standard set of the backend.
bool is_standard_set(const Group& g, const SymmetricSet& s);

/// Known global facts about a backend, used by the classification layer.
struct GroupFacts {
    bool finite = false;
    bool amenable = false;        // established for the backend kind itself
    bool free_subgroup = false;   // contains a non-abelian free subgroup
};
GroupFacts group_facts(const Group& g);

} // namespace cayleyiso
