#pragma once

#include "rcr/core.hpp"
#include "rcr/rcr.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace rcr {

// Variables are v1, v2, ...; Var holds the index.
using Var = std::uint32_t;

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Atom, Eq, Not, And, Geq };
    Kind kind;
    SymbolId rel = 0;              // Atom, and the guard of Geq
    std::vector<Var> args;         // Atom / guard arguments; Eq uses two
    std::vector<Var> bound;        // Geq: quantified tuple
    std::uint64_t n = 0;           // Geq
    std::vector<FormulaPtr> subs;  // Not: 1, And: any, Geq: body
    std::vector<Var> free;         // sorted
    std::size_t gd = 0;
};

FormulaPtr make_atom(SymbolId r, std::vector<Var> args);
FormulaPtr make_eq(Var x, Var y);
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_and(std::vector<FormulaPtr> fs);
FormulaPtr make_geq(std::uint64_t n, std::vector<Var> bound, SymbolId guard, std::vector<Var> guard_args,
                    FormulaPtr body);
// ∃=n as ∃>=n ∧ ¬∃>=n+1; n = 0 gives ¬∃>=1.
FormulaPtr make_exactly(std::uint64_t n, std::vector<Var> bound, SymbolId guard, std::vector<Var> guard_args,
                        FormulaPtr body);

class WfError : public Error {
public:
    using Error::Error;
};

struct WfInfo {
    std::vector<Var> free;
    std::size_t gd;
};
WfInfo check_wf(const FormulaPtr &f, const Signature &sig);

// Number of AST nodes as a tree (sharing expanded), saturating at cap.
std::size_t tree_size(const FormulaPtr &f, std::size_t cap = SIZE_MAX);
std::size_t dag_size(const FormulaPtr &f);

class Evaluator {
public:
    explicit Evaluator(const Structure &S) : S_(S) {}
    // assignment[x] is the value of variable x; free variables of f must be set.
    bool eval(const FormulaPtr &f, std::vector<Element> &assignment);
    bool holds(const FormulaPtr &sentence);

    static constexpr Element UNSET = UINT32_MAX;

private:
    struct Key {
        const Formula *f;
        Tuple vals;
        bool operator==(const Key &o) const { return f == o.f && vals == o.vals; }
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const { return TupleHash{}(k.vals) ^ std::hash<const void *>{}(k.f); }
    };
    const Structure &S_;
    std::unordered_map<Key, bool, KeyHash> memo_;
};

bool evaluate(const FormulaPtr &f, const Structure &S, std::vector<Element> assignment = {});

std::string to_sexp(const FormulaPtr &f, const Signature &sig, std::size_t max_nodes = 1000000);
FormulaPtr parse_sexp(const std::string &text, const Signature &sig);

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// Color formulas over the colors of a refinement run on `joint` (for two structures, their disjoint union).
class Synthesizer {
public:
    Synthesizer(const Structure &joint, const RefinementTrace &trace, std::size_t budget = 1000000);

    // phi^i_c over the variable tuple x (distinct variables from the pool v1..v2m).
    FormulaPtr color_formula(std::size_t i, ColorId c, const std::vector<Var> &x);
    FormulaPtr color_formula(std::size_t i, ColorId c);
    std::size_t nodes_created() const { return created_; }

private:
    const Structure &joint_;
    const RefinementTrace &trace_;
    std::size_t budget_, created_ = 0;
    int m_;
    std::vector<std::vector<ColorId>> colors_at_; // distinct colors per round
    std::map<std::tuple<std::size_t, ColorId, std::vector<Var>>, FormulaPtr> cache_;

    FormulaPtr base(ColorId c, const std::vector<Var> &x);
    void charge(std::size_t k);
    Var complement(Var v) const { return v > static_cast<Var>(m_) ? v - m_ : v + m_; }
};

struct Sentence {
    FormulaPtr formula;
    bool true_on_a;
};

// A GF(C) sentence separating A and B when RCR distinguishes them.
std::optional<Sentence> distinguishing_sentence(const Structure &A, const Structure &B,
                                                std::size_t budget = 1000000);

} // namespace rcr
