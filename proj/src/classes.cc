#include <amalg/classes.hh>
#include <amalg/detail/compiled.hh>
#include <amalg/detail/parallel.hh>

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

namespace amalg {

namespace {

using detail::Truth;

struct PartialModel {
    int n = 0;
    std::vector<int> rel_arity, func_arity;
    std::vector<std::vector<std::uint8_t>> rels; // 0 false, 1 true, 2 unassigned
    std::vector<std::vector<int>> funcs;         // -1 unassigned
    std::vector<int> consts;                     // -1 unassigned

    auto size() const -> int { return n; }

    auto index(int arity, const int * args) const -> std::size_t
    {
        std::size_t pos = 0;
        for (int i = 0; i < arity; ++i)
            pos = pos * static_cast<std::size_t>(n) + static_cast<std::size_t>(args[i]);
        return pos;
    }

    auto rel(int idx, const int * args) const -> Truth
    {
        auto v = rels[static_cast<std::size_t>(idx)][index(rel_arity[static_cast<std::size_t>(idx)], args)];
        return v == 2 ? Truth::Unknown : detail::truth_of(v == 1);
    }

    auto func(int idx, const int * args) const -> int
    {
        return funcs[static_cast<std::size_t>(idx)][index(func_arity[static_cast<std::size_t>(idx)], args)];
    }

    auto constant(int idx) const -> int { return consts[static_cast<std::size_t>(idx)]; }
};

struct Cell {
    enum class Kind { Constant, Relation, Function };
    Kind kind;
    std::size_t symbol;
    std::size_t pos;
};

class ModelEnumerator {
public:
    ModelEnumerator(const Theory & t, int n) :
        _t(t),
        _n(n)
    {
        for (auto & s : t.sentences) {
            _all.emplace_back(s, t.sig);
            if (classify(s) == SyntacticClass::Universal)
                _universal.push_back(_all.size() - 1);
        }

        _root.n = n;
        for (auto & [_, a] : t.sig.relations()) {
            _root.rel_arity.push_back(a);
            _root.rels.emplace_back(ipow(n, a), 2);
        }
        for (auto & [_, a] : t.sig.functions()) {
            _root.func_arity.push_back(a);
            _root.funcs.emplace_back(ipow(n, a), -1);
        }
        _root.consts.assign(t.sig.constants().size(), -1);

        for (std::size_t c = 0; c < _root.consts.size(); ++c)
            _cells.push_back({Cell::Kind::Constant, c, 0});
        // Cells grouped by the largest element they mention, so universal
        // sentences see complete substructures on initial segments early.
        std::vector<std::pair<int, Cell>> rest;
        auto tuple_max = [&](std::size_t pos, int arity) {
            auto t = index_tuple(pos, arity, n);
            return *std::max_element(t.begin(), t.end());
        };
        for (std::size_t r = 0; r < _root.rels.size(); ++r)
            for (std::size_t pos = 0; pos < _root.rels[r].size(); ++pos)
                rest.push_back({tuple_max(pos, _root.rel_arity[r]), {Cell::Kind::Relation, r, pos}});
        for (std::size_t f = 0; f < _root.funcs.size(); ++f)
            for (std::size_t pos = 0; pos < _root.funcs[f].size(); ++pos)
                rest.push_back({tuple_max(pos, _root.func_arity[f]), {Cell::Kind::Function, f, pos}});
        std::stable_sort(rest.begin(), rest.end(), [](auto & a, auto & b) { return a.first < b.first; });
        for (auto & [_, c] : rest)
            _cells.push_back(c);
        for (auto & c : _all)
            _env_size = std::max(_env_size, c.slots());
    }

    auto root() const -> const PartialModel & { return _root; }
    auto cell_count() const -> std::size_t { return _cells.size(); }

    auto values(const Cell & c) const -> int { return c.kind == Cell::Kind::Relation ? 2 : _n; }

    void assign(PartialModel & m, const Cell & c, int v) const
    {
        switch (c.kind) {
            case Cell::Kind::Constant: m.consts[c.symbol] = v; break;
            case Cell::Kind::Relation: m.rels[c.symbol][c.pos] = static_cast<std::uint8_t>(v); break;
            case Cell::Kind::Function: m.funcs[c.symbol][c.pos] = v; break;
        }
    }

    auto viable(const PartialModel & m) const -> bool
    {
        std::vector<int> env(static_cast<std::size_t>(_env_size), 0);
        for (auto i : _universal)
            if (_all[i].eval(m, env) == Truth::False)
                return false;
        return true;
    }

    /// Partial models with the first `depth` cells assigned, in order.
    auto frontier(std::size_t depth) const -> std::vector<PartialModel>
    {
        std::vector<PartialModel> level{_root};
        if (! viable(_root))
            return {};
        for (std::size_t k = 0; k < depth && k < _cells.size(); ++k) {
            std::vector<PartialModel> next;
            for (auto & m : level)
                for (int v = 0; v < values(_cells[k]); ++v) {
                    PartialModel child = m;
                    assign(child, _cells[k], v);
                    if (viable(child))
                        next.push_back(std::move(child));
                }
            level = std::move(next);
        }
        return level;
    }

    /// Canonical forms of all models completing m from cell `from` onward.
    auto complete(PartialModel m, std::size_t from) const -> std::map<StructureKey, FinStructure>
    {
        std::map<StructureKey, FinStructure> out;
        dfs(m, from, out);
        return out;
    }

private:
    void dfs(PartialModel & m, std::size_t k, std::map<StructureKey, FinStructure> & out) const
    {
        if (k == _cells.size()) {
            FinStructure s(_t.sig, _n);
            for (std::size_t r = 0; r < m.rels.size(); ++r)
                s.relation_table(r) = m.rels[r];
            for (std::size_t f = 0; f < m.funcs.size(); ++f)
                s.function_table(f) = m.funcs[f];
            for (std::size_t c = 0; c < m.consts.size(); ++c)
                s.set_constant_value(c, m.consts[c]);
            std::vector<int> env(static_cast<std::size_t>(_env_size), 0);
            detail::TotalModel total(s);
            for (auto & f : _all)
                if (f.eval(total, env) != Truth::True)
                    return;
            auto canon = canonical_form(s);
            auto key = structure_key(canon.form);
            out.try_emplace(std::move(key), std::move(canon.form));
            return;
        }
        auto & c = _cells[k];
        for (int v = 0; v < values(c); ++v) {
            assign(m, c, v);
            if (viable(m))
                dfs(m, k + 1, out);
        }
        assign(m, c, c.kind == Cell::Kind::Relation ? 2 : -1);
    }

    const Theory & _t;
    int _n;
    std::vector<detail::CompiledFormula> _all;
    std::vector<std::size_t> _universal;
    std::vector<Cell> _cells;
    PartialModel _root;
    int _env_size = 0;
};

} // namespace

auto enumerate_models(const Theory & t, int n, int workers) -> std::vector<FinStructure>
{
    if (n < 1)
        fail(ErrorCode::RangeError, "model size must be at least 1");
    ModelEnumerator e(t, n);
    std::map<StructureKey, FinStructure> found;
    if (workers <= 1)
        found = e.complete(e.root(), 0);
    else {
        std::size_t depth = 0;
        std::vector<PartialModel> front = e.frontier(0);
        while (depth < e.cell_count() && front.size() < static_cast<std::size_t>(workers) * 8)
            front = e.frontier(++depth);
        auto parts = detail::parallel_map<std::map<StructureKey, FinStructure>>(front.size(), workers,
            [&](std::size_t i) { return e.complete(front[i], depth); });
        for (auto & p : parts)
            found.merge(p);
    }
    std::vector<FinStructure> out;
    out.reserve(found.size());
    for (auto & [_, m] : found)
        out.push_back(std::move(m));
    return out;
}

struct ModelClass::State {
    Signature sig;
    std::optional<Theory> theory;
    int max_size = 0;
    std::vector<FinStructure> listed;

    std::mutex mutex;
    std::map<int, std::vector<FinStructure>> members;
    std::map<int, std::vector<StructurePtr>> shared;
};

auto ModelClass::explicit_list(Signature sig, const std::vector<FinStructure> & members) -> ModelClass
{
    ModelClass k;
    k._state = std::make_shared<State>();
    k._state->sig = std::move(sig);
    std::map<StructureKey, FinStructure> canon;
    for (auto & m : members) {
        if (m.signature() != k._state->sig)
            fail(ErrorCode::SignatureMismatch, "explicit class members must share the class signature");
        auto c = canonical_form(m);
        canon.try_emplace(structure_key(c.form), std::move(c.form));
        k._state->max_size = std::max(k._state->max_size, m.size());
    }
    for (auto & [_, m] : canon)
        k._state->listed.push_back(std::move(m));
    return k;
}

auto ModelClass::bounded(Theory t, int max_size) -> ModelClass
{
    if (max_size < 0)
        fail(ErrorCode::RangeError, "class size bound must be non-negative");
    ModelClass k;
    k._state = std::make_shared<State>();
    k._state->sig = t.sig;
    k._state->theory = std::move(t);
    k._state->max_size = max_size;
    return k;
}

auto ModelClass::signature() const -> const Signature & { return _state->sig; }
auto ModelClass::is_bounded() const -> bool { return _state->theory.has_value(); }
auto ModelClass::theory() const -> const Theory * { return _state->theory ? &*_state->theory : nullptr; }
auto ModelClass::max_size() const -> int { return _state->max_size; }

auto ModelClass::members_of_size(int n, int workers) const -> const std::vector<FinStructure> &
{
    {
        std::lock_guard lock(_state->mutex);
        if (auto it = _state->members.find(n); it != _state->members.end())
            return it->second;
    }
    std::vector<FinStructure> found;
    if (n >= 1 && n <= _state->max_size) {
        if (_state->theory)
            found = enumerate_models(*_state->theory, n, workers);
        else
            for (auto & m : _state->listed)
                if (m.size() == n)
                    found.push_back(m);
    }
    std::lock_guard lock(_state->mutex);
    return _state->members.try_emplace(n, std::move(found)).first->second;
}

auto ModelClass::shared_members_of_size(int n, int workers) const -> const std::vector<StructurePtr> &
{
    auto & plain = members_of_size(n, workers);
    std::lock_guard lock(_state->mutex);
    auto it = _state->shared.find(n);
    if (it == _state->shared.end()) {
        std::vector<StructurePtr> ptrs;
        for (auto & m : plain)
            ptrs.push_back(std::make_shared<const FinStructure>(m));
        it = _state->shared.emplace(n, std::move(ptrs)).first;
    }
    return it->second;
}

auto contains(const ModelClass & k, const FinStructure & m) -> bool
{
    if (m.signature() != k.signature())
        fail(ErrorCode::SignatureMismatch, "structure signature differs from the class signature");
    if (m.size() > k.max_size())
        return false;
    if (auto t = k.theory())
        return models_theory(m, *t);
    auto key = structure_key(canonical_form(m).form);
    for (auto & member : k.members_of_size(m.size()))
        if (structure_key(member) == key)
            return true;
    return false;
}

auto iterate(const ModelClass & k, int max_size, int workers) -> std::vector<StructurePtr>
{
    std::vector<StructurePtr> out;
    for (int n = 1; n <= std::min(max_size, k.max_size()); ++n) {
        auto & members = k.shared_members_of_size(n, workers);
        out.insert(out.end(), members.begin(), members.end());
    }
    return out;
}

} // namespace amalg
