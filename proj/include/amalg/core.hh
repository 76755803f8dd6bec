#pragma once

#include <amalg/error.hh>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amalg {

using Tuple = std::vector<int>;

/// Relation, function and constant symbols with their arities. Equality is
/// built into the logic and is never a declared symbol.
class Signature {
public:
    Signature() = default;

    /// Validates names (identifiers, not reserved, not of the parameter form
    /// c<digits>), positive arities, and that no name is used twice.
    Signature(std::map<std::string, int> relations, std::map<std::string, int> functions,
        std::set<std::string> constants);

    auto relations() const -> const std::map<std::string, int> & { return _relations; }
    auto functions() const -> const std::map<std::string, int> & { return _functions; }
    auto constants() const -> const std::set<std::string> & { return _constants; }

    auto empty() const -> bool;
    auto has_relation(std::string_view name) const -> bool;
    auto has_function(std::string_view name) const -> bool;
    auto has_constant(std::string_view name) const -> bool;
    auto relation_arity(std::string_view name) const -> int;
    auto function_arity(std::string_view name) const -> int;

    // Position of a symbol in the name-sorted declaration order; -1 if absent.
    auto relation_index(std::string_view name) const -> int;
    auto function_index(std::string_view name) const -> int;
    auto constant_index(std::string_view name) const -> int;

    auto is_subsignature_of(const Signature & other) const -> bool;

    /// No function or constant symbols.
    auto is_relational() const -> bool;

    auto max_function_arity() const -> int;

    friend auto operator==(const Signature &, const Signature &) -> bool = default;

private:
    std::map<std::string, int> _relations;
    std::map<std::string, int> _functions;
    std::set<std::string> _constants;
};

auto sig_intersect(const Signature & s1, const Signature & s2) -> Signature;
auto sig_union(const Signature & s1, const Signature & s2) -> Signature;

/// Symbols of s1 not declared in s2.
auto sig_difference(const Signature & s1, const Signature & s2) -> Signature;

auto ipow(int base, int exponent) -> std::size_t;
auto tuple_index(std::span<const int> tuple, int size) -> std::size_t;
auto index_tuple(std::size_t index, int arity, int size) -> Tuple;

/// A finite structure over the universe 0..size-1. Relations are dense
/// truth tables and functions dense value tables, both indexed by
/// tuple_index (first argument most significant), laid out in the
/// name-sorted order of the signature.
class FinStructure {
public:
    /// All relations empty, all functions constantly 0, all constants 0.
    FinStructure(Signature sig, int size);

    auto signature() const -> const Signature & { return _sig; }
    auto size() const -> int { return _size; }

    auto holds(std::string_view relation, std::span<const int> args) const -> bool;
    auto apply(std::string_view function, std::span<const int> args) const -> int;
    auto constant(std::string_view name) const -> int;

    void set_relation(std::string_view relation, std::span<const int> args, bool value = true);
    void set_function(std::string_view function, std::span<const int> args, int value);
    void set_constant(std::string_view name, int value);

    auto relation_table(std::size_t idx) const -> const std::vector<std::uint8_t> & { return _relations[idx]; }
    auto function_table(std::size_t idx) const -> const std::vector<int> & { return _functions[idx]; }
    auto constant_value(std::size_t idx) const -> int { return _constants[idx]; }
    auto relation_table(std::size_t idx) -> std::vector<std::uint8_t> & { return _relations[idx]; }
    auto function_table(std::size_t idx) -> std::vector<int> & { return _functions[idx]; }
    void set_constant_value(std::size_t idx, int value);

    /// Sorted tuples of a relation.
    auto tuples(std::string_view relation) const -> std::vector<Tuple>;

    friend auto operator==(const FinStructure &, const FinStructure &) -> bool = default;

private:
    void check_element(int e) const;
    void check_args(std::span<const int> args, int arity, std::string_view symbol) const;

    Signature _sig;
    int _size;
    std::vector<std::vector<std::uint8_t>> _relations;
    std::vector<std::vector<int>> _functions;
    std::vector<int> _constants;
};

using StructurePtr = std::shared_ptr<const FinStructure>;

auto share(FinStructure m) -> StructurePtr;

/// Interpretations for symbols being added by expand(). Function tables are
/// dense, in tuple_index order.
struct Interpretations {
    std::map<std::string, std::vector<Tuple>> relations;
    std::map<std::string, std::vector<int>> functions;
    std::map<std::string, int> constants;
};

auto reduct(const FinStructure & m, const Signature & s0) -> FinStructure;

auto expand(const FinStructure & m0, const Signature & extra_sig, const Interpretations & extra) -> FinStructure;

/// Re-interprets the symbols of s_delta on m's universe by carrying
/// source's interpretation along bij (source element i becomes bij[i]).
auto transport(const FinStructure & m, const Signature & s_delta, const FinStructure & source,
    std::span<const int> bij) -> FinStructure;

/// Image of m under the permutation perm (element i becomes perm[i]).
auto permuted(const FinStructure & m, std::span<const int> perm) -> FinStructure;

/// Substructure induced on the given (sorted, closed) element set,
/// renumbered in increasing order.
auto induced(const FinStructure & m, std::span<const int> elements) -> FinStructure;

struct DiagramLiteral {
    enum class Kind { Relation, Function, Constant, Equality };

    Kind kind;
    bool positive;
    std::string symbol;
    // Relation: the argument tuple. Function: arguments, output in value.
    // Constant: value only. Equality: the two elements.
    Tuple args;
    int value = 0;

    friend auto operator<=>(const DiagramLiteral &, const DiagramLiteral &) = default;
};

auto to_string(const DiagramLiteral & lit) -> std::string;

/// Every positive and negative atomic fact of s over params, plus the
/// inequalities between distinct params.
auto atomic_diagram(const FinStructure & m, const Signature & s, const std::set<int> & params)
    -> std::set<DiagramLiteral>;

/// Total order on structures used for canonical forms and enumeration
/// output: size, then sorted tuple lists per relation (in name order), then
/// function tables, then constant values.
struct StructureKey {
    int size = 0;
    std::vector<std::vector<std::size_t>> relations;
    std::vector<std::vector<int>> functions;
    std::vector<int> constants;

    friend auto operator<=>(const StructureKey &, const StructureKey &) = default;
};

auto structure_key(const FinStructure & m) -> StructureKey;
auto structure_less(const FinStructure & a, const FinStructure & b) -> bool;

struct CanonicalForm {
    FinStructure form;
    std::vector<int> perm;
};

/// Minimal isomorphic copy under the StructureKey order, plus the
/// permutation taking m to it.
auto canonical_form(const FinStructure & m) -> CanonicalForm;

auto isomorphic(const FinStructure & a, const FinStructure & b) -> bool;

/// All automorphisms, as permutations, in lexicographic order.
auto automorphisms(const FinStructure & m) -> std::vector<std::vector<int>>;

} // namespace amalg
