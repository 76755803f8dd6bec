#pragma once

#include <amalg/amalgamation.hh>
#include <amalg/chain.hh>
#include <amalg/classes.hh>
#include <amalg/ec.hh>

#include <optional>
#include <string>
#include <vector>

namespace fixtures {

using namespace amalg;

// The code of the Error that fn throws, if any.
auto error_code_of(auto && fn) -> std::optional<ErrorCode>
{
    try {
        fn();
    }
    catch (const Error & e) {
        return e.code();
    }
    return std::nullopt;
}

inline auto poset_axioms() -> std::vector<std::string>
{
    return {"forall x. leq(x,x)", "forall x y. leq(x,y) & leq(y,x) -> x = y",
        "forall x y z. leq(x,y) & leq(y,z) -> leq(x,z)"};
}

inline auto leq_sig() -> Signature { return Signature({{"leq", 2}}, {}, {}); }
inline auto graph_sig() -> Signature { return Signature({{"edge", 2}}, {}, {}); }
inline auto sig_f() -> Signature { return Signature({{"leq", 2}}, {{"f", 1}}, {}); }
inline auto sig_g() -> Signature { return Signature({{"leq", 2}}, {{"g", 1}}, {}); }
inline auto sig_fg() -> Signature { return Signature({{"leq", 2}}, {{"f", 1}, {"g", 1}}, {}); }

inline auto posets() -> Theory { return make_theory("posets", leq_sig(), poset_axioms()); }

inline auto linear_orders() -> Theory
{
    auto ax = poset_axioms();
    ax.push_back("forall x y. leq(x,y) | leq(y,x)");
    return make_theory("linear-orders", leq_sig(), ax);
}

inline auto graphs() -> Theory
{
    return make_theory("graphs", graph_sig(), {"forall x. !edge(x,x)", "forall x y. edge(x,y) -> edge(y,x)"});
}

inline auto sets() -> Theory { return make_theory("sets", Signature(), {}); }

inline auto posets_with(const std::string & fn) -> Theory
{
    auto ax = poset_axioms();
    ax.push_back("forall x y. leq(x,y) -> leq(" + fn + "(x)," + fn + "(y))");
    return make_theory("posets-" + fn, Signature({{"leq", 2}}, {{fn, 1}}, {}), ax);
}

inline auto posets_fg() -> Theory
{
    auto ax = poset_axioms();
    ax.push_back("forall x y. leq(x,y) -> leq(f(x),f(y))");
    ax.push_back("forall x y. leq(x,y) -> leq(g(x),g(y))");
    return make_theory("posets-f-g", sig_fg(), ax);
}

// Poset on n elements from the strict pairs below.
inline auto poset(int n, const std::vector<std::pair<int, int>> & less, const Signature & sig = leq_sig())
    -> FinStructure
{
    FinStructure m(sig, n);
    for (int x = 0; x < n; ++x)
        m.set_relation("leq", std::vector<int>{x, x});
    for (auto [a, b] : less)
        m.set_relation("leq", std::vector<int>{a, b});
    for (auto & [fn, arity] : sig.functions())
        for (int x = 0; arity == 1 && x < n; ++x)
            m.set_function(fn, std::vector<int>{x}, x);
    return m;
}

inline auto chain(int n, const Signature & sig = leq_sig()) -> FinStructure
{
    std::vector<std::pair<int, int>> less;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            less.emplace_back(a, b);
    return poset(n, less, sig);
}

inline auto antichain(int n, const Signature & sig = leq_sig()) -> FinStructure { return poset(n, {}, sig); }

inline auto sp(FinStructure m) -> StructurePtr { return share(std::move(m)); }

// Two 2-chains sharing their bottom point.
inline auto bottom_chains(const Signature & sig = leq_sig()) -> Quintuple
{
    return make_quintuple(sp(chain(2, sig)), sp(chain(2, sig)), sp(chain(1, sig)), {0}, {0});
}

} // namespace fixtures
