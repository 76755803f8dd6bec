#include <amalg/morphism.hh>
#include <amalg/detail/parallel.hh>

#include <algorithm>

namespace amalg {

auto make_morphism(StructurePtr dom, StructurePtr cod, std::vector<int> map, Signature over) -> Morphism
{
    if (static_cast<int>(map.size()) != dom->size())
        fail(ErrorCode::RangeError, "map length " + std::to_string(map.size()) + " does not match domain size "
                + std::to_string(dom->size()));
    for (int v : map)
        if (v < 0 || v >= cod->size())
            fail(ErrorCode::RangeError, "map value " + std::to_string(v) + " outside codomain");
    return Morphism{std::move(dom), std::move(cod), std::move(map), std::move(over)};
}

auto identity(StructurePtr m, Signature over) -> Morphism
{
    std::vector<int> map(static_cast<std::size_t>(m->size()));
    for (std::size_t i = 0; i < map.size(); ++i)
        map[i] = static_cast<int>(i);
    return Morphism{m, m, std::move(map), std::move(over)};
}

auto identity(StructurePtr m) -> Morphism
{
    auto sig = m->signature();
    return identity(std::move(m), std::move(sig));
}

namespace {

struct SymbolPair {
    int dom_idx;
    int cod_idx;
    int arity;
};

struct Plan {
    std::vector<SymbolPair> relations, functions;
    std::vector<std::pair<int, int>> constants; // dom value, cod value
};

auto make_plan(const FinStructure & dom, const FinStructure & cod, const Signature & over) -> Plan
{
    if (! over.is_subsignature_of(dom.signature()) || ! over.is_subsignature_of(cod.signature()))
        fail(ErrorCode::NotSubsignature, "morphism signature is not contained in both structures' signatures");
    Plan p;
    for (auto & [name, arity] : over.relations())
        p.relations.push_back({dom.signature().relation_index(name), cod.signature().relation_index(name), arity});
    for (auto & [name, arity] : over.functions())
        p.functions.push_back({dom.signature().function_index(name), cod.signature().function_index(name), arity});
    for (auto & name : over.constants())
        p.constants.emplace_back(dom.constant(name), cod.constant(name));
    return p;
}

// Calls fn on every tuple over {0..bound-1} of the given arity.
template <typename F>
void for_tuples(int arity, int bound, F && fn)
{
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    while (true) {
        fn(t);
        int pos = arity - 1;
        while (pos >= 0 && ++t[static_cast<std::size_t>(pos)] == bound)
            t[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0)
            return;
    }
}

class EmbeddingSearcher {
public:
    EmbeddingSearcher(const FinStructure & dom, const FinStructure & cod, const Signature & over, std::size_t limit) :
        _dom(dom),
        _cod(cod),
        _plan(make_plan(dom, cod, over)),
        _limit(limit)
    {
    }

    auto initial_forced(const std::vector<int> & fixed) const -> std::optional<std::vector<int>>
    {
        std::vector<int> forced(static_cast<std::size_t>(_dom.size()), -1);
        for (std::size_t i = 0; i < fixed.size() && i < forced.size(); ++i)
            forced[i] = fixed[i];
        for (auto & [d, c] : _plan.constants) {
            auto & slot = forced[static_cast<std::size_t>(d)];
            if (slot != -1 && slot != c)
                return std::nullopt;
            slot = c;
        }
        for (int v : forced)
            if (v >= _cod.size())
                return std::nullopt;
        return forced;
    }

    // Candidates for element 0 given the initial forcing.
    auto first_candidates(const std::vector<int> & forced) const -> std::vector<int>
    {
        std::vector<int> out;
        for (int v = 0; v < _cod.size(); ++v)
            if (forced[0] == -1 || forced[0] == v)
                out.push_back(v);
        return out;
    }

    auto run(std::vector<int> forced, std::optional<int> first) -> std::vector<std::vector<int>>
    {
        _found.clear();
        if (_dom.size() > _cod.size())
            return {};
        std::vector<int> map(static_cast<std::size_t>(_dom.size()), -1);
        std::vector<char> used(static_cast<std::size_t>(_cod.size()), 0);
        extend(0, map, used, forced, first);
        return std::move(_found);
    }

private:
    void extend(int i, std::vector<int> & map, std::vector<char> & used, const std::vector<int> & forced,
        std::optional<int> only)
    {
        if (_found.size() >= _limit)
            return;
        if (i == _dom.size()) {
            _found.push_back(map);
            return;
        }
        for (int v = 0; v < _cod.size(); ++v) {
            if (only && v != *only)
                continue;
            if (used[static_cast<std::size_t>(v)] || (forced[static_cast<std::size_t>(i)] != -1 && forced[static_cast<std::size_t>(i)] != v))
                continue;
            auto next_forced = forced;
            map[static_cast<std::size_t>(i)] = v;
            used[static_cast<std::size_t>(v)] = 1;
            if (consistent(i, map, used, next_forced))
                extend(i + 1, map, used, next_forced, std::nullopt);
            used[static_cast<std::size_t>(v)] = 0;
            map[static_cast<std::size_t>(i)] = -1;
            if (_found.size() >= _limit)
                return;
        }
    }

    auto consistent(int i, const std::vector<int> & map, const std::vector<char> & used, std::vector<int> & forced) const
        -> bool
    {
        bool ok = true;
        std::vector<int> image;
        for (auto & r : _plan.relations) {
            auto & dt = _dom.relation_table(static_cast<std::size_t>(r.dom_idx));
            auto & ct = _cod.relation_table(static_cast<std::size_t>(r.cod_idx));
            for_tuples(r.arity, i + 1, [&](const std::vector<int> & t) {
                if (! ok || std::find(t.begin(), t.end(), i) == t.end())
                    return;
                image.resize(t.size());
                for (std::size_t k = 0; k < t.size(); ++k)
                    image[k] = map[static_cast<std::size_t>(t[k])];
                if (dt[tuple_index(t, _dom.size())] != ct[tuple_index(image, _cod.size())])
                    ok = false;
            });
            if (! ok)
                return false;
        }
        for (auto & f : _plan.functions) {
            auto & dt = _dom.function_table(static_cast<std::size_t>(f.dom_idx));
            auto & ct = _cod.function_table(static_cast<std::size_t>(f.cod_idx));
            for_tuples(f.arity, i + 1, [&](const std::vector<int> & t) {
                if (! ok)
                    return;
                int out = dt[tuple_index(t, _dom.size())];
                bool new_tuple = std::find(t.begin(), t.end(), i) != t.end();
                if (! new_tuple && out != i)
                    return;
                image.resize(t.size());
                for (std::size_t k = 0; k < t.size(); ++k)
                    image[k] = map[static_cast<std::size_t>(t[k])];
                int required = ct[tuple_index(image, _cod.size())];
                if (out <= i) {
                    ok = map[static_cast<std::size_t>(out)] == required;
                    return;
                }
                auto & slot = forced[static_cast<std::size_t>(out)];
                if ((slot != -1 && slot != required) || used[static_cast<std::size_t>(required)])
                    ok = false;
                else
                    slot = required;
            });
            if (! ok)
                return false;
        }
        return true;
    }

    const FinStructure & _dom;
    const FinStructure & _cod;
    Plan _plan;
    std::size_t _limit;
    std::vector<std::vector<int>> _found;
};

} // namespace

auto embedding_failure(const Morphism & h) -> std::string
{
    auto & dom = *h.dom;
    auto & cod = *h.cod;
    auto plan = make_plan(dom, cod, h.over);
    if (static_cast<int>(h.map.size()) != dom.size())
        return "map length does not match domain size";
    for (int v : h.map)
        if (v < 0 || v >= cod.size())
            return "map value outside codomain";
    if (! is_injective(h))
        return "map is not injective";

    auto name_of = [](const std::map<std::string, int> & m, int idx) {
        auto it = m.begin();
        std::advance(it, idx);
        return it->first;
    };
    auto tuple_text = [](const std::vector<int> & t) {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i)
            s += (i ? "," : "") + std::to_string(t[i]);
        return s + ")";
    };

    std::string reason;
    std::vector<int> image;
    for (auto & r : plan.relations) {
        auto & dt = dom.relation_table(static_cast<std::size_t>(r.dom_idx));
        auto & ct = cod.relation_table(static_cast<std::size_t>(r.cod_idx));
        for_tuples(r.arity, dom.size(), [&](const std::vector<int> & t) {
            if (! reason.empty())
                return;
            image.resize(t.size());
            for (std::size_t k = 0; k < t.size(); ++k)
                image[k] = h.map[static_cast<std::size_t>(t[k])];
            bool a = dt[tuple_index(t, dom.size())], b = ct[tuple_index(image, cod.size())];
            if (a != b)
                reason = name_of(dom.signature().relations(), r.dom_idx) + tuple_text(t)
                    + (a ? " is not preserved" : " is not reflected");
        });
    }
    for (auto & f : plan.functions) {
        auto & dt = dom.function_table(static_cast<std::size_t>(f.dom_idx));
        auto & ct = cod.function_table(static_cast<std::size_t>(f.cod_idx));
        for_tuples(f.arity, dom.size(), [&](const std::vector<int> & t) {
            if (! reason.empty())
                return;
            image.resize(t.size());
            for (std::size_t k = 0; k < t.size(); ++k)
                image[k] = h.map[static_cast<std::size_t>(t[k])];
            if (h.map[static_cast<std::size_t>(dt[tuple_index(t, dom.size())])] != ct[tuple_index(image, cod.size())])
                reason = name_of(dom.signature().functions(), f.dom_idx) + tuple_text(t) + " does not commute";
        });
    }
    for (auto & [d, c] : plan.constants)
        if (reason.empty() && h.map[static_cast<std::size_t>(d)] != c)
            reason = "a constant is not preserved";
    return reason;
}

auto verify_embedding(const Morphism & h) -> bool
{
    return embedding_failure(h).empty();
}

auto enumerate_embeddings(const StructurePtr & dom, const StructurePtr & cod, const Signature & over,
    const EmbeddingSearch & search) -> std::vector<Morphism>
{
    EmbeddingSearcher probe(*dom, *cod, over, search.limit);
    std::vector<std::vector<int>> maps;
    if (auto forced = probe.initial_forced(search.fixed)) {
        if (search.workers <= 1)
            maps = probe.run(*forced, std::nullopt);
        else {
            auto firsts = probe.first_candidates(*forced);
            auto parts = detail::parallel_map<std::vector<std::vector<int>>>(firsts.size(), search.workers,
                [&](std::size_t k) {
                    EmbeddingSearcher s(*dom, *cod, over, search.limit);
                    return s.run(*forced, firsts[k]);
                });
            for (auto & p : parts)
                for (auto & m : p)
                    if (maps.size() < search.limit)
                        maps.push_back(std::move(m));
        }
    }
    std::vector<Morphism> out;
    out.reserve(maps.size());
    for (auto & m : maps)
        out.push_back(Morphism{dom, cod, std::move(m), over});
    return out;
}

auto first_embedding(const StructurePtr & dom, const StructurePtr & cod, const Signature & over,
    const std::vector<int> & fixed) -> std::optional<Morphism>
{
    auto found = enumerate_embeddings(dom, cod, over, {1, fixed, 1});
    if (found.empty())
        return std::nullopt;
    return std::move(found.front());
}

auto compose(const Morphism & f, const Morphism & g) -> Morphism
{
    if (f.cod->size() != g.dom->size())
        fail(ErrorCode::DomainMismatch, "codomain of the first map is not the domain of the second");
    auto over = sig_intersect(f.over, g.over);
    if (f.cod != g.dom) {
        if (! over.is_subsignature_of(f.cod->signature()) || ! over.is_subsignature_of(g.dom->signature())
            || reduct(*f.cod, over) != reduct(*g.dom, over))
            fail(ErrorCode::DomainMismatch, "codomain of the first map is not the domain of the second");
    }
    std::vector<int> map(f.map.size());
    for (std::size_t i = 0; i < map.size(); ++i)
        map[i] = g.map[static_cast<std::size_t>(f.map[i])];
    return Morphism{f.dom, g.cod, std::move(map), std::move(over)};
}

auto squares_commute(const Morphism & p, const Morphism & q, const Morphism & r, const Morphism & s) -> bool
{
    auto left = compose(p, q);
    auto right = compose(r, s);
    if (left.dom->size() != right.dom->size() || left.cod->size() != right.cod->size())
        fail(ErrorCode::DomainMismatch, "the two composites have different endpoints");
    return left.map == right.map;
}

auto is_injective(const Morphism & h) -> bool
{
    std::vector<char> seen(static_cast<std::size_t>(h.cod->size()), 0);
    for (int v : h.map) {
        if (seen[static_cast<std::size_t>(v)])
            return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

auto is_bijective(const Morphism & h) -> bool
{
    return h.dom->size() == h.cod->size() && is_injective(h);
}

auto inverse(const Morphism & h) -> Morphism
{
    if (! is_bijective(h))
        fail(ErrorCode::NotBijective, "map is not a bijection");
    std::vector<int> inv(h.map.size());
    for (std::size_t i = 0; i < h.map.size(); ++i)
        inv[static_cast<std::size_t>(h.map[i])] = static_cast<int>(i);
    return Morphism{h.cod, h.dom, std::move(inv), h.over};
}

auto image(const Morphism & h) -> std::vector<int>
{
    std::vector<int> out = h.map;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

auto retarget(const Morphism & h, StructurePtr dom, StructurePtr cod, Signature over) -> Morphism
{
    return make_morphism(std::move(dom), std::move(cod), h.map, std::move(over));
}

} // namespace amalg
