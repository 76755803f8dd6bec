#pragma once

#include <amalg/core.hh>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace amalg {

struct Term {
    enum class Kind { Variable, Parameter, Constant, Apply };

    Kind kind;
    std::string name;     // variable, constant or function name
    int parameter = 0;    // element named by c<k>
    std::vector<Term> args;

    static auto variable(std::string name) -> Term;
    static auto param(int element) -> Term;
    static auto constant(std::string name) -> Term;
    static auto apply(std::string function, std::vector<Term> args) -> Term;

    friend auto operator==(const Term &, const Term &) -> bool = default;
};

/// Immutable first-order formula. Conjunction and disjunction are n-ary;
/// the empty conjunction is "true" and the empty disjunction "false".
/// Quantifier nodes bind a single variable.
class Formula {
public:
    enum class Kind { Relation, Equal, Not, And, Or, Implies, Forall, Exists };

    static auto truth() -> Formula;
    static auto falsity() -> Formula;
    static auto relation(std::string name, std::vector<Term> args) -> Formula;
    static auto equal(Term lhs, Term rhs) -> Formula;
    static auto negation(Formula f) -> Formula;
    static auto conjunction(std::vector<Formula> fs) -> Formula;
    static auto disjunction(std::vector<Formula> fs) -> Formula;
    static auto implication(Formula lhs, Formula rhs) -> Formula;
    static auto forall(std::string var, Formula body) -> Formula;
    static auto exists(std::string var, Formula body) -> Formula;

    auto kind() const -> Kind;
    auto name() const -> const std::string &;          // relation or bound variable
    auto terms() const -> const std::vector<Term> &;    // relation args, or the two sides of Equal
    auto children() const -> const std::vector<Formula> &;
    auto body() const -> const Formula &;               // Not, Forall, Exists

    auto is_true() const -> bool;
    auto is_false() const -> bool;

    friend auto operator==(const Formula & a, const Formula & b) -> bool;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> _node;
};

struct Theory {
    std::string name;
    Signature sig;
    std::vector<Formula> sentences;
};

/// Parses the text grammar: variables [a-z][a-zA-Z0-9_]*, element
/// parameters c<digits>, "forall x y." / "exists x.", connectives ! & | ->
/// (tightest first, -> right-associative), atoms R(t,...) and t = u, and the
/// keywords true/false. Free variables must be listed in free_vars.
auto parse_formula(std::string_view text, const Signature & sig, const std::set<std::string> & free_vars = {})
    -> Formula;

auto make_theory(std::string name, Signature sig, const std::vector<std::string> & sentences) -> Theory;

auto to_string(const Term & t) -> std::string;
auto to_string(const Formula & f) -> std::string;

/// Symbol/arity check against sig and free-variable check.
void validate(const Formula & f, const Signature & sig, const std::set<std::string> & free_vars = {});

auto free_variables(const Formula & f) -> std::set<std::string>;
auto parameters(const Formula & f) -> std::set<int>;

using Environment = std::map<std::string, int>;

auto evaluate(const FinStructure & m, const Formula & f, const Environment & env = {}) -> bool;

auto models_theory(const FinStructure & m, const Theory & t) -> bool;

enum class SyntacticClass { Universal, Existential, Inductive, Other };

auto to_string(SyntacticClass c) -> std::string_view;

/// Negation normal form over Not/And/Or/Forall/Exists; implications are
/// eliminated.
auto nnf(const Formula & f) -> Formula;

/// Universal: no existential node in the NNF. Existential: no universal
/// node. Inductive: no universal node below an existential one.
auto classify(const Formula & f) -> SyntacticClass;

auto is_universal(const Theory & t) -> bool;
auto is_inductive(const Theory & t) -> bool;

/// Conjunction of the literals with every parameter outside keep replaced
/// by a fresh variable x1, x2, ... (in increasing element order) and
/// existentially closed. Kept parameters stay as c<k>.
auto existentialize(const std::set<DiagramLiteral> & lits, const std::set<int> & keep) -> Formula;

auto literal_formula(const DiagramLiteral & lit) -> Formula;

/// Replaces each parameter c<k> by c<map[k]>. Fails with RangeError on a
/// parameter the map does not cover (map[k] < 0).
auto rename_parameters(const Formula & f, const std::vector<int> & map) -> Formula;

auto alpha_equivalent(const Formula & a, const Formula & b) -> bool;

} // namespace amalg
