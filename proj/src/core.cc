#include <amalg/core.hh>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace amalg {

namespace {

auto valid_identifier(std::string_view name) -> bool
{
    if (name.empty())
        return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (! alpha(name.front()))
        return false;
    return std::all_of(name.begin(), name.end(), [&](char c) { return alpha(c) || digit(c); });
}

auto parameter_shaped(std::string_view name) -> bool
{
    return name.size() >= 2 && name.front() == 'c'
        && std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void check_name(const std::string & name)
{
    static const std::set<std::string> reserved = {"forall", "exists", "true", "false"};
    if (! valid_identifier(name) || reserved.count(name) || parameter_shaped(name))
        fail(ErrorCode::InvalidSymbol, "'" + name + "' cannot be declared as a symbol");
}

template <typename Map>
auto index_in(const Map & m, std::string_view name) -> int
{
    auto it = m.find(std::string(name));
    if (it == m.end())
        return -1;
    return static_cast<int>(std::distance(m.begin(), it));
}

enum class SymbolKind { None, Relation, Function, Constant };

auto kind_of(const Signature & s, const std::string & name) -> std::pair<SymbolKind, int>
{
    if (auto it = s.relations().find(name); it != s.relations().end())
        return {SymbolKind::Relation, it->second};
    if (auto it = s.functions().find(name); it != s.functions().end())
        return {SymbolKind::Function, it->second};
    if (s.constants().count(name))
        return {SymbolKind::Constant, 0};
    return {SymbolKind::None, 0};
}

void check_compatible(const Signature & s1, const Signature & s2)
{
    auto check = [&](const std::string & name) {
        auto a = kind_of(s1, name), b = kind_of(s2, name);
        if (a.first != SymbolKind::None && b.first != SymbolKind::None && a != b)
            fail(ErrorCode::SymbolClash, "symbol '" + name + "' declared with different kind or arity");
    };
    for (auto & [n, _] : s1.relations())
        check(n);
    for (auto & [n, _] : s1.functions())
        check(n);
    for (auto & n : s1.constants())
        check(n);
}

} // namespace

Signature::Signature(std::map<std::string, int> relations, std::map<std::string, int> functions,
    std::set<std::string> constants) :
    _relations(std::move(relations)),
    _functions(std::move(functions)),
    _constants(std::move(constants))
{
    std::set<std::string> seen;
    auto claim = [&](const std::string & name) {
        check_name(name);
        if (! seen.insert(name).second)
            fail(ErrorCode::SymbolClash, "symbol '" + name + "' declared twice");
    };
    for (auto & [name, arity] : _relations) {
        claim(name);
        if (arity < 1)
            fail(ErrorCode::InvalidSymbol, "relation '" + name + "' needs a positive arity");
    }
    for (auto & [name, arity] : _functions) {
        claim(name);
        if (arity < 1)
            fail(ErrorCode::InvalidSymbol, "function '" + name + "' needs a positive arity");
    }
    for (auto & name : _constants)
        claim(name);
}

auto Signature::empty() const -> bool
{
    return _relations.empty() && _functions.empty() && _constants.empty();
}

auto Signature::has_relation(std::string_view name) const -> bool { return relation_index(name) >= 0; }
auto Signature::has_function(std::string_view name) const -> bool { return function_index(name) >= 0; }
auto Signature::has_constant(std::string_view name) const -> bool { return constant_index(name) >= 0; }

auto Signature::relation_arity(std::string_view name) const -> int
{
    auto it = _relations.find(std::string(name));
    return it == _relations.end() ? -1 : it->second;
}

auto Signature::function_arity(std::string_view name) const -> int
{
    auto it = _functions.find(std::string(name));
    return it == _functions.end() ? -1 : it->second;
}

auto Signature::relation_index(std::string_view name) const -> int { return index_in(_relations, name); }
auto Signature::function_index(std::string_view name) const -> int { return index_in(_functions, name); }
auto Signature::constant_index(std::string_view name) const -> int { return index_in(_constants, name); }

auto Signature::is_subsignature_of(const Signature & other) const -> bool
{
    for (auto & [n, a] : _relations)
        if (other.relation_arity(n) != a)
            return false;
    for (auto & [n, a] : _functions)
        if (other.function_arity(n) != a)
            return false;
    for (auto & n : _constants)
        if (! other.has_constant(n))
            return false;
    return true;
}

auto Signature::is_relational() const -> bool
{
    return _functions.empty() && _constants.empty();
}

auto Signature::max_function_arity() const -> int
{
    int result = 0;
    for (auto & [_, a] : _functions)
        result = std::max(result, a);
    return result;
}

auto sig_intersect(const Signature & s1, const Signature & s2) -> Signature
{
    check_compatible(s1, s2);
    std::map<std::string, int> rels, funcs;
    std::set<std::string> consts;
    for (auto & [n, a] : s1.relations())
        if (s2.relation_arity(n) == a)
            rels.emplace(n, a);
    for (auto & [n, a] : s1.functions())
        if (s2.function_arity(n) == a)
            funcs.emplace(n, a);
    for (auto & n : s1.constants())
        if (s2.has_constant(n))
            consts.insert(n);
    return Signature(std::move(rels), std::move(funcs), std::move(consts));
}

auto sig_union(const Signature & s1, const Signature & s2) -> Signature
{
    check_compatible(s1, s2);
    auto rels = s1.relations();
    auto funcs = s1.functions();
    auto consts = s1.constants();
    rels.insert(s2.relations().begin(), s2.relations().end());
    funcs.insert(s2.functions().begin(), s2.functions().end());
    consts.insert(s2.constants().begin(), s2.constants().end());
    return Signature(std::move(rels), std::move(funcs), std::move(consts));
}

auto sig_difference(const Signature & s1, const Signature & s2) -> Signature
{
    std::map<std::string, int> rels, funcs;
    std::set<std::string> consts;
    for (auto & [n, a] : s1.relations())
        if (kind_of(s2, n).first == SymbolKind::None)
            rels.emplace(n, a);
    for (auto & [n, a] : s1.functions())
        if (kind_of(s2, n).first == SymbolKind::None)
            funcs.emplace(n, a);
    for (auto & n : s1.constants())
        if (kind_of(s2, n).first == SymbolKind::None)
            consts.insert(n);
    return Signature(std::move(rels), std::move(funcs), std::move(consts));
}

auto ipow(int base, int exponent) -> std::size_t
{
    std::size_t result = 1;
    for (int i = 0; i < exponent; ++i)
        result *= static_cast<std::size_t>(base);
    return result;
}

auto tuple_index(std::span<const int> tuple, int size) -> std::size_t
{
    std::size_t result = 0;
    for (int e : tuple)
        result = result * static_cast<std::size_t>(size) + static_cast<std::size_t>(e);
    return result;
}

auto index_tuple(std::size_t index, int arity, int size) -> Tuple
{
    Tuple result(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
        result[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(size));
        index /= static_cast<std::size_t>(size);
    }
    return result;
}

FinStructure::FinStructure(Signature sig, int size) :
    _sig(std::move(sig)),
    _size(size)
{
    if (size < 1)
        fail(ErrorCode::RangeError, "structures must have at least one element");
    for (auto & [_, arity] : _sig.relations())
        _relations.emplace_back(ipow(size, arity), 0);
    for (auto & [_, arity] : _sig.functions())
        _functions.emplace_back(ipow(size, arity), 0);
    _constants.assign(_sig.constants().size(), 0);
}

void FinStructure::check_element(int e) const
{
    if (e < 0 || e >= _size)
        fail(ErrorCode::RangeError, "element " + std::to_string(e) + " outside universe of size " + std::to_string(_size));
}

void FinStructure::check_args(std::span<const int> args, int arity, std::string_view symbol) const
{
    if (static_cast<int>(args.size()) != arity)
        fail(ErrorCode::ArityMismatch, "'" + std::string(symbol) + "' expects " + std::to_string(arity) + " arguments");
    for (int e : args)
        check_element(e);
}

auto FinStructure::holds(std::string_view relation, std::span<const int> args) const -> bool
{
    int idx = _sig.relation_index(relation);
    if (idx < 0)
        fail(ErrorCode::UnknownSymbol, "no relation '" + std::string(relation) + "'");
    check_args(args, _sig.relation_arity(relation), relation);
    return _relations[static_cast<std::size_t>(idx)][tuple_index(args, _size)] != 0;
}

auto FinStructure::apply(std::string_view function, std::span<const int> args) const -> int
{
    int idx = _sig.function_index(function);
    if (idx < 0)
        fail(ErrorCode::UnknownSymbol, "no function '" + std::string(function) + "'");
    check_args(args, _sig.function_arity(function), function);
    return _functions[static_cast<std::size_t>(idx)][tuple_index(args, _size)];
}

auto FinStructure::constant(std::string_view name) const -> int
{
    int idx = _sig.constant_index(name);
    if (idx < 0)
        fail(ErrorCode::UnknownSymbol, "no constant '" + std::string(name) + "'");
    return _constants[static_cast<std::size_t>(idx)];
}

void FinStructure::set_relation(std::string_view relation, std::span<const int> args, bool value)
{
    int idx = _sig.relation_index(relation);
    if (idx < 0)
        fail(ErrorCode::UnknownSymbol, "no relation '" + std::string(relation) + "'");
    check_args(args, _sig.relation_arity(relation), relation);
    _relations[static_cast<std::size_t>(idx)][tuple_index(args, _size)] = value ? 1 : 0;
}

void FinStructure::set_function(std::string_view function, std::span<const int> args, int value)
{
    int idx = _sig.function_index(function);
    if (idx < 0)
        fail(ErrorCode::UnknownSymbol, "no function '" + std::string(function) + "'");
    check_args(args, _sig.function_arity(function), function);
    check_element(value);
    _functions[static_cast<std::size_t>(idx)][tuple_index(args, _size)] = value;
}

void FinStructure::set_constant(std::string_view name, int value)
{
    int idx = _sig.constant_index(name);
    if (idx < 0)
        fail(ErrorCode::UnknownSymbol, "no constant '" + std::string(name) + "'");
    set_constant_value(static_cast<std::size_t>(idx), value);
}

void FinStructure::set_constant_value(std::size_t idx, int value)
{
    check_element(value);
    _constants[idx] = value;
}

auto FinStructure::tuples(std::string_view relation) const -> std::vector<Tuple>
{
    int idx = _sig.relation_index(relation);
    if (idx < 0)
        fail(ErrorCode::UnknownSymbol, "no relation '" + std::string(relation) + "'");
    int arity = _sig.relation_arity(relation);
    std::vector<Tuple> result;
    auto & table = _relations[static_cast<std::size_t>(idx)];
    for (std::size_t i = 0; i < table.size(); ++i)
        if (table[i])
            result.push_back(index_tuple(i, arity, _size));
    return result;
}

auto share(FinStructure m) -> StructurePtr
{
    return std::make_shared<const FinStructure>(std::move(m));
}

auto reduct(const FinStructure & m, const Signature & s0) -> FinStructure
{
    if (! s0.is_subsignature_of(m.signature()))
        fail(ErrorCode::NotSubsignature, "reduct target is not a subsignature");
    FinStructure result(s0, m.size());
    auto & sig = m.signature();
    std::size_t i = 0;
    for (auto & [name, _] : s0.relations())
        result.relation_table(i++) = m.relation_table(static_cast<std::size_t>(sig.relation_index(name)));
    i = 0;
    for (auto & [name, _] : s0.functions())
        result.function_table(i++) = m.function_table(static_cast<std::size_t>(sig.function_index(name)));
    i = 0;
    for (auto & name : s0.constants())
        result.set_constant_value(i++, m.constant(name));
    return result;
}

auto expand(const FinStructure & m0, const Signature & extra_sig, const Interpretations & extra) -> FinStructure
{
    if (! sig_intersect(m0.signature(), extra_sig).empty())
        fail(ErrorCode::SymbolClash, "expansion symbols overlap the existing signature");
    for (auto & [name, _] : extra.relations)
        if (! extra_sig.has_relation(name))
            fail(ErrorCode::UnknownSymbol, "interpretation for undeclared relation '" + name + "'");
    for (auto & [name, _] : extra.functions)
        if (! extra_sig.has_function(name))
            fail(ErrorCode::UnknownSymbol, "interpretation for undeclared function '" + name + "'");
    for (auto & [name, _] : extra.constants)
        if (! extra_sig.has_constant(name))
            fail(ErrorCode::UnknownSymbol, "interpretation for undeclared constant '" + name + "'");

    FinStructure result(sig_union(m0.signature(), extra_sig), m0.size());
    auto & msig = m0.signature();
    auto & rsig = result.signature();
    int n = m0.size();
    for (auto & [name, _] : msig.relations())
        result.relation_table(static_cast<std::size_t>(rsig.relation_index(name))) =
            m0.relation_table(static_cast<std::size_t>(msig.relation_index(name)));
    for (auto & [name, _] : msig.functions())
        result.function_table(static_cast<std::size_t>(rsig.function_index(name))) =
            m0.function_table(static_cast<std::size_t>(msig.function_index(name)));
    for (auto & name : msig.constants())
        result.set_constant(name, m0.constant(name));

    for (auto & [name, arity] : extra_sig.relations()) {
        auto it = extra.relations.find(name);
        if (it == extra.relations.end())
            continue;
        for (auto & t : it->second)
            result.set_relation(name, t, true);
    }
    for (auto & [name, arity] : extra_sig.functions()) {
        auto it = extra.functions.find(name);
        if (it == extra.functions.end())
            fail(ErrorCode::InputError, "missing table for function '" + name + "'");
        if (it->second.size() != ipow(n, arity))
            fail(ErrorCode::RangeError, "table for '" + name + "' has the wrong length");
        for (std::size_t i = 0; i < it->second.size(); ++i)
            result.set_function(name, index_tuple(i, arity, n), it->second[i]);
    }
    for (auto & name : extra_sig.constants()) {
        auto it = extra.constants.find(name);
        if (it == extra.constants.end())
            fail(ErrorCode::InputError, "missing value for constant '" + name + "'");
        result.set_constant(name, it->second);
    }
    return result;
}

namespace {

void check_bijection(std::span<const int> bij, int size)
{
    if (static_cast<int>(bij.size()) != size)
        fail(ErrorCode::NotBijective, "map length does not match universe size");
    std::vector<bool> hit(static_cast<std::size_t>(size), false);
    for (int e : bij) {
        if (e < 0 || e >= size || hit[static_cast<std::size_t>(e)])
            fail(ErrorCode::NotBijective, "map is not a bijection");
        hit[static_cast<std::size_t>(e)] = true;
    }
}

auto map_tuple(const Tuple & t, std::span<const int> f) -> Tuple
{
    Tuple r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        r[i] = f[static_cast<std::size_t>(t[i])];
    return r;
}

} // namespace

auto transport(const FinStructure & m, const Signature & s_delta, const FinStructure & source,
    std::span<const int> bij) -> FinStructure
{
    if (! s_delta.is_subsignature_of(source.signature()))
        fail(ErrorCode::NotSubsignature, "transported symbols are not interpreted in the source");
    if (! sig_intersect(m.signature(), s_delta).empty())
        fail(ErrorCode::SymbolClash, "transported symbols are already interpreted in the target");
    if (source.size() != m.size())
        fail(ErrorCode::NotBijective, "source and target universes differ in size");
    check_bijection(bij, m.size());

    FinStructure moved = permuted(reduct(source, s_delta), bij);
    Interpretations extra;
    for (auto & [name, _] : s_delta.relations())
        extra.relations[name] = moved.tuples(name);
    for (auto & [name, _] : s_delta.functions())
        extra.functions[name] = moved.function_table(static_cast<std::size_t>(s_delta.function_index(name)));
    for (auto & name : s_delta.constants())
        extra.constants[name] = moved.constant(name);
    return expand(m, s_delta, extra);
}

auto permuted(const FinStructure & m, std::span<const int> perm) -> FinStructure
{
    check_bijection(perm, m.size());
    auto & sig = m.signature();
    int n = m.size();
    FinStructure result(sig, n);
    std::size_t idx = 0;
    for (auto & [name, arity] : sig.relations()) {
        auto & src = m.relation_table(idx);
        auto & dst = result.relation_table(idx);
        for (std::size_t i = 0; i < src.size(); ++i)
            if (src[i])
                dst[tuple_index(map_tuple(index_tuple(i, arity, n), perm), n)] = 1;
        ++idx;
    }
    idx = 0;
    for (auto & [name, arity] : sig.functions()) {
        auto & src = m.function_table(idx);
        auto & dst = result.function_table(idx);
        for (std::size_t i = 0; i < src.size(); ++i)
            dst[tuple_index(map_tuple(index_tuple(i, arity, n), perm), n)] = perm[static_cast<std::size_t>(src[i])];
        ++idx;
    }
    for (std::size_t c = 0; c < sig.constants().size(); ++c)
        result.set_constant_value(c, perm[static_cast<std::size_t>(m.constant_value(c))]);
    return result;
}

auto induced(const FinStructure & m, std::span<const int> elements) -> FinStructure
{
    int n = m.size();
    int k = static_cast<int>(elements.size());
    std::vector<int> position(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < k; ++i)
        position[static_cast<std::size_t>(elements[static_cast<std::size_t>(i)])] = i;

    auto & sig = m.signature();
    FinStructure result(sig, k);
    std::size_t idx = 0;
    for (auto & [name, arity] : sig.relations()) {
        auto & dst = result.relation_table(idx);
        for (std::size_t i = 0; i < dst.size(); ++i)
            dst[i] = m.relation_table(idx)[tuple_index(map_tuple(index_tuple(i, arity, k), elements), n)];
        ++idx;
    }
    idx = 0;
    for (auto & [name, arity] : sig.functions()) {
        auto & dst = result.function_table(idx);
        for (std::size_t i = 0; i < dst.size(); ++i) {
            int out = m.function_table(idx)[tuple_index(map_tuple(index_tuple(i, arity, k), elements), n)];
            if (position[static_cast<std::size_t>(out)] < 0)
                fail(ErrorCode::RangeError, "element set is not closed under '" + name + "'");
            dst[i] = position[static_cast<std::size_t>(out)];
        }
        ++idx;
    }
    for (std::size_t c = 0; c < sig.constants().size(); ++c) {
        int p = position[static_cast<std::size_t>(m.constant_value(c))];
        if (p < 0)
            fail(ErrorCode::RangeError, "element set misses a constant");
        result.set_constant_value(c, p);
    }
    return result;
}

auto to_string(const DiagramLiteral & lit) -> std::string
{
    std::ostringstream out;
    auto args = [&] {
        out << "(";
        for (std::size_t i = 0; i < lit.args.size(); ++i)
            out << (i ? "," : "") << lit.args[i];
        out << ")";
    };
    if (! lit.positive)
        out << "!";
    switch (lit.kind) {
        case DiagramLiteral::Kind::Relation:
            out << lit.symbol;
            args();
            break;
        case DiagramLiteral::Kind::Function:
            out << lit.symbol;
            args();
            out << "=" << lit.value;
            break;
        case DiagramLiteral::Kind::Constant:
            out << lit.symbol << "=" << lit.value;
            break;
        case DiagramLiteral::Kind::Equality:
            out << lit.args[0] << "=" << lit.args[1];
            break;
    }
    return out.str();
}

namespace {

void for_each_tuple(const std::vector<int> & elements, int arity, const auto & fn)
{
    if (elements.empty())
        return;
    std::vector<std::size_t> pos(static_cast<std::size_t>(arity), 0);
    Tuple t(static_cast<std::size_t>(arity));
    while (true) {
        for (std::size_t i = 0; i < pos.size(); ++i)
            t[i] = elements[pos[i]];
        fn(t);
        int i = arity - 1;
        while (i >= 0 && ++pos[static_cast<std::size_t>(i)] == elements.size())
            pos[static_cast<std::size_t>(i--)] = 0;
        if (i < 0)
            break;
    }
}

} // namespace

auto atomic_diagram(const FinStructure & m, const Signature & s, const std::set<int> & params)
    -> std::set<DiagramLiteral>
{
    if (! s.is_subsignature_of(m.signature()))
        fail(ErrorCode::NotSubsignature, "diagram signature is not a subsignature");
    std::vector<int> elems(params.begin(), params.end());
    for (int e : elems)
        if (e < 0 || e >= m.size())
            fail(ErrorCode::RangeError, "parameter outside universe");

    std::set<DiagramLiteral> result;
    for (auto & [name, arity] : s.relations())
        for_each_tuple(elems, arity, [&](const Tuple & t) {
            result.insert({DiagramLiteral::Kind::Relation, m.holds(name, t), name, t, 0});
        });
    for (auto & [name, arity] : s.functions())
        for_each_tuple(elems, arity, [&](const Tuple & t) {
            int v = m.apply(name, t);
            for (int d : elems)
                result.insert({DiagramLiteral::Kind::Function, v == d, name, t, d});
        });
    for (auto & name : s.constants()) {
        int v = m.constant(name);
        for (int d : elems)
            result.insert({DiagramLiteral::Kind::Constant, v == d, name, {}, d});
    }
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j)
            result.insert({DiagramLiteral::Kind::Equality, false, "", {elems[i], elems[j]}, 0});
    return result;
}

namespace {

auto permuted_key(const FinStructure & m, std::span<const int> perm) -> StructureKey
{
    StructureKey key;
    int n = m.size();
    key.size = n;
    auto & sig = m.signature();
    std::size_t idx = 0;
    Tuple t;
    for (auto & [name, arity] : sig.relations()) {
        auto & table = m.relation_table(idx++);
        std::vector<std::size_t> set;
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (! table[i])
                continue;
            std::size_t rest = i, out = 0, scale = 1;
            for (int a = 0; a < arity; ++a) {
                out += static_cast<std::size_t>(perm[rest % static_cast<std::size_t>(n)]) * scale;
                rest /= static_cast<std::size_t>(n);
                scale *= static_cast<std::size_t>(n);
            }
            set.push_back(out);
        }
        std::sort(set.begin(), set.end());
        key.relations.push_back(std::move(set));
    }
    idx = 0;
    for (auto & [name, arity] : sig.functions()) {
        auto & table = m.function_table(idx++);
        std::vector<int> out(table.size());
        for (std::size_t i = 0; i < table.size(); ++i) {
            std::size_t rest = i, pos = 0, scale = 1;
            for (int a = 0; a < arity; ++a) {
                pos += static_cast<std::size_t>(perm[rest % static_cast<std::size_t>(n)]) * scale;
                rest /= static_cast<std::size_t>(n);
                scale *= static_cast<std::size_t>(n);
            }
            out[pos] = perm[static_cast<std::size_t>(table[i])];
        }
        key.functions.push_back(std::move(out));
    }
    for (std::size_t c = 0; c < sig.constants().size(); ++c)
        key.constants.push_back(perm[static_cast<std::size_t>(m.constant_value(c))]);
    return key;
}

} // namespace

auto structure_key(const FinStructure & m) -> StructureKey
{
    std::vector<int> id(static_cast<std::size_t>(m.size()));
    std::iota(id.begin(), id.end(), 0);
    return permuted_key(m, id);
}

auto structure_less(const FinStructure & a, const FinStructure & b) -> bool
{
    return structure_key(a) < structure_key(b);
}

auto canonical_form(const FinStructure & m) -> CanonicalForm
{
    std::vector<int> perm(static_cast<std::size_t>(m.size()));
    std::iota(perm.begin(), perm.end(), 0);
    auto best_key = permuted_key(m, perm);
    auto best = perm;
    while (std::next_permutation(perm.begin(), perm.end())) {
        auto key = permuted_key(m, perm);
        if (key < best_key) {
            best_key = std::move(key);
            best = perm;
        }
    }
    return {permuted(m, best), best};
}

auto isomorphic(const FinStructure & a, const FinStructure & b) -> bool
{
    if (a.size() != b.size() || a.signature() != b.signature())
        return false;
    return canonical_form(a).form == canonical_form(b).form;
}

auto automorphisms(const FinStructure & m) -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> result;
    std::vector<int> perm(static_cast<std::size_t>(m.size()));
    std::iota(perm.begin(), perm.end(), 0);
    auto key = structure_key(m);
    do {
        if (permuted_key(m, perm) == key)
            result.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

} // namespace amalg
