#pragma once

// Index-resolved formulas for fast repeated evaluation, with Kleene
// three-valued semantics so the same code serves total structures and
// partially assigned ones during model enumeration.

#include <amalg/logic.hh>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace amalg::detail {

enum class Truth : std::uint8_t { False, True, Unknown };

inline auto truth_of(bool b) -> Truth { return b ? Truth::True : Truth::False; }

inline constexpr int max_arity = 8;

struct CTerm {
    enum class Kind : std::uint8_t { Variable, Parameter, Constant, Apply };
    Kind kind;
    int index; // slot, element, constant index or function index
    std::vector<CTerm> args;
};

struct CNode {
    Formula::Kind kind;
    int index = 0; // relation index or variable slot
    std::vector<CTerm> terms;
    std::vector<CNode> children;
};

class CompiledFormula {
public:
    CompiledFormula(const Formula & f, const Signature & sig, const std::vector<std::string> & free_vars = {});

    auto slots() const -> int { return _slots; }
    auto max_parameter() const -> int { return _max_parameter; }

    /// Model provides size(), rel(idx, const int *) -> Truth,
    /// func(idx, const int *) -> int (-1 when unknown), constant(idx) -> int.
    template <typename Model>
    auto eval(const Model & m, std::vector<int> & env) const -> Truth
    {
        return eval_node(_root, m, env);
    }

private:
    template <typename Model>
    auto eval_term(const CTerm & t, const Model & m, const std::vector<int> & env) const -> int
    {
        switch (t.kind) {
            case CTerm::Kind::Variable: return env[static_cast<std::size_t>(t.index)];
            case CTerm::Kind::Parameter: return t.index;
            case CTerm::Kind::Constant: return m.constant(t.index);
            case CTerm::Kind::Apply: {
                std::array<int, max_arity> args{};
                for (std::size_t i = 0; i < t.args.size(); ++i) {
                    args[i] = eval_term(t.args[i], m, env);
                    if (args[i] < 0)
                        return -1;
                }
                return m.func(t.index, args.data());
            }
        }
        return -1;
    }

    template <typename Model>
    auto eval_node(const CNode & n, const Model & m, std::vector<int> & env) const -> Truth
    {
        switch (n.kind) {
            case Formula::Kind::Relation: {
                std::array<int, max_arity> args{};
                for (std::size_t i = 0; i < n.terms.size(); ++i) {
                    args[i] = eval_term(n.terms[i], m, env);
                    if (args[i] < 0)
                        return Truth::Unknown;
                }
                return m.rel(n.index, args.data());
            }
            case Formula::Kind::Equal: {
                int a = eval_term(n.terms[0], m, env);
                int b = eval_term(n.terms[1], m, env);
                if (a < 0 || b < 0)
                    return Truth::Unknown;
                return truth_of(a == b);
            }
            case Formula::Kind::Not: {
                auto v = eval_node(n.children[0], m, env);
                return v == Truth::Unknown ? v : truth_of(v == Truth::False);
            }
            case Formula::Kind::And: {
                auto result = Truth::True;
                for (auto & c : n.children) {
                    auto v = eval_node(c, m, env);
                    if (v == Truth::False)
                        return v;
                    if (v == Truth::Unknown)
                        result = v;
                }
                return result;
            }
            case Formula::Kind::Or: {
                auto result = Truth::False;
                for (auto & c : n.children) {
                    auto v = eval_node(c, m, env);
                    if (v == Truth::True)
                        return v;
                    if (v == Truth::Unknown)
                        result = v;
                }
                return result;
            }
            case Formula::Kind::Implies: {
                auto a = eval_node(n.children[0], m, env);
                if (a == Truth::False)
                    return Truth::True;
                auto b = eval_node(n.children[1], m, env);
                if (b == Truth::True)
                    return b;
                return a == Truth::True ? b : Truth::Unknown;
            }
            case Formula::Kind::Forall:
            case Formula::Kind::Exists: {
                bool universal = n.kind == Formula::Kind::Forall;
                auto result = universal ? Truth::True : Truth::False;
                auto & slot = env[static_cast<std::size_t>(n.index)];
                for (int e = 0; e < m.size(); ++e) {
                    slot = e;
                    auto v = eval_node(n.children[0], m, env);
                    if (v == Truth::Unknown)
                        result = v;
                    else if ((v == Truth::True) != universal)
                        return v;
                }
                return result;
            }
        }
        return Truth::Unknown;
    }

    CNode _root;
    int _slots = 0;
    int _max_parameter = -1;
};

/// Two-valued view of a FinStructure whose signature the formula was
/// compiled against.
class TotalModel {
public:
    explicit TotalModel(const FinStructure & m);

    auto size() const -> int { return _m.size(); }
    auto rel(int idx, const int * args) const -> Truth;
    auto func(int idx, const int * args) const -> int;
    auto constant(int idx) const -> int { return _m.constant_value(static_cast<std::size_t>(idx)); }

private:
    const FinStructure & _m;
    std::vector<int> _rel_arity, _func_arity;
};

} // namespace amalg::detail
