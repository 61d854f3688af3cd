#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rcr {

using Element = std::uint32_t;
using SymbolId = std::uint32_t;
using Tuple = std::vector<Element>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TupleHash {
    std::size_t operator()(const Tuple &t) const noexcept;
};

struct Symbol {
    std::string name;
    int arity;
    bool operator==(const Symbol &) const = default;
};

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    std::size_t size() const { return symbols_.size(); }
    const Symbol &operator[](SymbolId r) const { return symbols_[r]; }
    const std::vector<Symbol> &symbols() const { return symbols_; }
    std::optional<SymbolId> find(const std::string &name) const;
    int arity(SymbolId r) const { return symbols_[r].arity; }
    int max_arity() const { return max_arity_; }
    bool operator==(const Signature &o) const { return symbols_ == o.symbols_; }

private:
    std::vector<Symbol> symbols_;
    int max_arity_ = 0;
};

using AtomicType = std::vector<SymbolId>;

// Position pairs are stored 0-based; text output is 1-based.
class SimilarityType {
public:
    using Pair = std::pair<std::uint8_t, std::uint8_t>;

    SimilarityType() = default;
    SimilarityType(int k, int l, std::vector<Pair> pairs);

    int left_arity() const { return k_; }
    int right_arity() const { return l_; }
    const std::vector<Pair> &pairs() const { return pairs_; }
    bool empty() const { return pairs_.empty(); }
    std::size_t size() const { return pairs_.size(); }
    bool contains(int i, int j) const;
    bool contains_all(const SimilarityType &o) const;
    bool is_transitive() const;
    SimilarityType transposed() const;

    void encode(std::string &out) const;
    std::string encode() const;
    std::string str() const;

    auto operator<=>(const SimilarityType &) const = default;

private:
    std::uint8_t k_ = 0, l_ = 0;
    std::vector<Pair> pairs_;
};

SimilarityType stp(std::span<const Element> a, std::span<const Element> b);
inline SimilarityType stp(std::span<const Element> a) { return stp(a, a); }

// Equivalence classes of positions under stp(a); classes[i] = smallest position equal to i.
std::vector<int> position_classes(const SimilarityType &self);

struct TupleRef {
    SymbolId relation;
    std::uint32_t index;
    auto operator<=>(const TupleRef &) const = default;
};

// A member of Tup(A): one distinct element vector with the set of relations holding it.
struct TupEntry {
    Tuple vec;
    AtomicType atp;
    TupleRef first;
};

class Structure {
public:
    Structure() = default;

    // Throws Error on arity mismatch, foreign elements, duplicates or uncovered elements.
    static Structure build(Signature sig, std::vector<std::string> names,
                           std::vector<std::vector<Tuple>> relations, bool pad_universe = false);

    const Signature &signature() const { return sig_; }
    std::size_t universe_size() const { return names_.size(); }
    const std::string &name(Element e) const { return names_[e]; }
    const std::vector<std::string> &names() const { return names_; }
    std::optional<Element> find_element(const std::string &name) const;

    const std::vector<Tuple> &relation(SymbolId r) const { return rels_[r]; }
    const std::vector<std::vector<Tuple>> &relations() const { return rels_; }
    bool holds(SymbolId r, std::span<const Element> t) const;

    const std::vector<TupEntry> &tup() const { return tup_; }
    std::optional<std::uint32_t> tup_index(std::span<const Element> t) const;
    std::uint32_t tup_index(TupleRef ref) const { return ref_to_tup_[ref.relation][ref.index]; }
    AtomicType atp(std::span<const Element> t) const;

    // Tup members containing element e.
    const std::vector<std::uint32_t> &occurrences(Element e) const { return occ_[e]; }

    std::string tuple_str(std::span<const Element> t) const;

private:
    Signature sig_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, Element> name_index_;
    std::vector<std::vector<Tuple>> rels_;
    std::vector<std::vector<std::uint32_t>> ref_to_tup_;
    std::vector<TupEntry> tup_;
    std::unordered_map<Tuple, std::uint32_t, TupleHash> tup_index_;
    std::vector<std::vector<std::uint32_t>> occ_;
};

struct Metrics {
    std::size_t size;
    std::size_t cohesion;
};
Metrics metrics(const Structure &A);

// Sorted edge list {u,v}, u < v.
std::vector<std::pair<Element, Element>> gaifman(const Structure &A);

bool strictly_equal_size(const Structure &A, const Structure &B);

struct Union {
    Structure joint;
    std::vector<std::uint8_t> element_side; // 0 = A, 1 = B
    std::vector<std::uint8_t> tup_side;
    std::vector<Element> element_origin; // element id inside its own side
};
Union disjoint_union(const Structure &A, const Structure &B);
Structure project(const Union &u, int side);

// Renames elements by perm (old id -> new id); names follow the elements.
Structure permute(const Structure &A, const std::vector<Element> &perm);

} // namespace rcr
