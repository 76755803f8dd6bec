#include <amalg/io.hh>

#include <algorithm>
#include <fstream>
#include <set>

namespace amalg::io {

namespace {

void only_fields(const Json & j, std::initializer_list<std::string_view> allowed, const std::string & what)
{
    if (! j.is_object())
        fail(ErrorCode::InputError, what + " must be a JSON object");
    for (auto & [key, _] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail(ErrorCode::InputError, "unknown field '" + key + "' in " + what);
}

auto field(const Json & j, const std::string & key, const std::string & what) -> const Json &
{
    auto it = j.find(key);
    if (it == j.end())
        fail(ErrorCode::InputError, what + " is missing field '" + key + "'");
    return *it;
}

auto integer(const Json & j, const std::string & what) -> int
{
    if (! j.is_number_integer())
        fail(ErrorCode::InputError, what + " must be an integer");
    return j.get<int>();
}

auto name_arity_map(const Json & j, const std::string & what) -> std::map<std::string, int>
{
    if (! j.is_object())
        fail(ErrorCode::InputError, what + " must map names to arities");
    std::map<std::string, int> out;
    for (auto & [name, arity] : j.items())
        out[name] = integer(arity, what + "." + name);
    return out;
}

auto map_of(const Morphism & h) -> Json
{
    return Json(h.map);
}

} // namespace

auto load_json(const std::filesystem::path & path) -> Json
{
    std::ifstream in(path);
    if (! in)
        fail(ErrorCode::InputError, "cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    }
    catch (const Json::parse_error & e) {
        fail(ErrorCode::InputError, "'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

auto int_vector(const Json & j, const std::string & field) -> std::vector<int>
{
    if (! j.is_array())
        fail(ErrorCode::InputError, field + " must be an array of integers");
    std::vector<int> out;
    for (auto & v : j)
        out.push_back(integer(v, field));
    return out;
}

auto to_json(const Signature & sig) -> Json
{
    Json j;
    j["relations"] = Json(sig.relations());
    j["functions"] = Json(sig.functions());
    j["constants"] = Json(std::vector<std::string>(sig.constants().begin(), sig.constants().end()));
    return j;
}

auto to_json(const FinStructure & m) -> Json
{
    auto & sig = m.signature();
    Json j;
    j["signature"] = to_json(sig);
    j["size"] = m.size();
    j["relations"] = Json::object();
    for (auto & [name, _] : sig.relations())
        j["relations"][name] = Json(m.tuples(name));
    j["functions"] = Json::object();
    for (auto & [name, arity] : sig.functions()) {
        auto & table = m.function_table(static_cast<std::size_t>(sig.function_index(name)));
        if (arity == 1)
            j["functions"][name] = Json(table);
        else {
            Json pairs = Json::array();
            for (std::size_t i = 0; i < table.size(); ++i)
                pairs.push_back(Json::array({Json(index_tuple(i, arity, m.size())), table[i]}));
            j["functions"][name] = pairs;
        }
    }
    j["constants"] = Json::object();
    for (auto & name : sig.constants())
        j["constants"][name] = m.constant(name);
    return j;
}

auto to_json(const Theory & t) -> Json
{
    Json j;
    j["name"] = t.name;
    j["signature"] = to_json(t.sig);
    j["sentences"] = Json::array();
    for (auto & s : t.sentences)
        j["sentences"].push_back(to_string(s));
    return j;
}

auto to_json(const Morphism & h) -> Json
{
    return Json{{"map", h.map}, {"over", to_json(h.over)}};
}

auto to_json(const Quintuple & q) -> Json
{
    return Json{{"A", to_json(*q.A)}, {"B", to_json(*q.B)}, {"C", to_json(*q.C)}, {"alpha", map_of(q.alpha)},
        {"beta", map_of(q.beta)}};
}

auto to_json(const AmalgamCertificate & c) -> Json
{
    return Json{{"D", to_json(*c.D)}, {"iota", map_of(c.iota)}, {"eta", map_of(c.eta)}, {"strong", c.strong}};
}

auto to_json(const SubcompatibleWitness & w) -> Json
{
    return Json{{"D0", to_json(*w.D0)}, {"E", to_json(*w.E)}, {"F", to_json(*w.F)}, {"alpha1", map_of(w.alpha1)},
        {"beta1", map_of(w.beta1)}, {"iota0", map_of(w.iota0)}, {"eta0", map_of(w.eta0)}};
}

auto to_json(const EcCounterexample & c) -> Json
{
    Json lits = Json::array();
    for (auto & lit : c.literals)
        lits.push_back(to_string(lit));
    return Json{{"D", to_json(*c.D)}, {"iota", map_of(c.iota)}, {"literals", lits}, {"in_D", to_string(c.in_d)},
        {"in_E", to_string(c.in_e)}};
}

auto to_json(const EcBounds & b) -> Json
{
    return Json{{"max_d", b.max_d}, {"max_tuple", b.max_tuple}};
}

auto to_json(const EcVerdict & v) -> Json
{
    Json j{{"status", std::string(to_string(v.status))}, {"bounds", to_json(v.bounds)}};
    if (v.counterexample)
        j["counterexample"] = to_json(*v.counterexample);
    return j;
}

auto to_json(const ChainState & s) -> Json
{
    Json rounds = Json::array();
    for (auto & step : s.steps) {
        Json r{{"side", std::string(to_string(step.side))}, {"index", step.index},
            {"structure", to_json(canonical_form(*step.model).form)}, {"model", to_json(*step.model)},
            {"connect", map_of(step.connect)}, {"verified", step.verified}};
        if (step.cross) {
            r["cross"] = map_of(*step.cross);
            r["cross_from"] = step.cross_from;
        }
        rounds.push_back(std::move(r));
    }
    return Json{{"D0", to_json(*s.d0)}, {"E0", to_json(*s.e_side.front())}, {"F0", to_json(*s.f_side.front())},
        {"iota0", map_of(s.iota0)}, {"eta0", map_of(s.eta0)}, {"steps", rounds}};
}

auto to_json(const FusionResult & r) -> Json
{
    return Json{{"G", to_json(*r.G)}, {"iota", map_of(r.iota)}, {"eta", map_of(r.eta)}, {"trace", to_json(r.trace)},
        {"ec", to_json(r.ec_flag)}, {"rounds", r.rounds}, {"ap_tainted", r.ap_tainted}};
}

Reader::Reader(std::filesystem::path base) : _base(std::move(base)) {}

auto Reader::from_file(const std::filesystem::path & path) -> std::pair<Reader, Json>
{
    return {Reader(path.parent_path()), load_json(path)};
}

auto Reader::deref(const Json & j) const -> std::pair<Reader, Json>
{
    if (j.is_string()) {
        auto path = std::filesystem::path(j.get<std::string>());
        return from_file(path.is_absolute() ? path : _base / path);
    }
    return {*this, j};
}

auto Reader::signature(const Json & raw) const -> Signature
{
    auto [r, j] = deref(raw);
    only_fields(j, {"relations", "functions", "constants"}, "signature");
    std::map<std::string, int> rels, funs;
    std::set<std::string> consts;
    if (j.contains("relations"))
        rels = name_arity_map(j["relations"], "signature.relations");
    if (j.contains("functions"))
        funs = name_arity_map(j["functions"], "signature.functions");
    if (j.contains("constants")) {
        if (! j["constants"].is_array())
            fail(ErrorCode::InputError, "signature.constants must be an array of names");
        for (auto & c : j["constants"]) {
            if (! c.is_string())
                fail(ErrorCode::InputError, "signature.constants must be an array of names");
            consts.insert(c.get<std::string>());
        }
    }
    return Signature(std::move(rels), std::move(funs), std::move(consts));
}

auto Reader::structure(const Json & raw) const -> FinStructure
{
    auto [r, j] = deref(raw);
    only_fields(j, {"signature", "size", "relations", "functions", "constants"}, "structure");
    auto sig = r.signature(field(j, "signature", "structure"));
    int size = integer(field(j, "size", "structure"), "structure.size");
    if (size < 1)
        fail(ErrorCode::InputError, "structure.size must be positive");
    FinStructure m(sig, size);
    auto section = [&](const char * key) -> Json {
        if (! j.contains(key))
            return Json::object();
        if (! j[key].is_object())
            fail(ErrorCode::InputError, std::string("structure.") + key + " must be an object");
        return j[key];
    };
    auto rels = section("relations");
    for (auto & [name, tuples] : rels.items()) {
        if (! sig.has_relation(name))
            fail(ErrorCode::InputError, "structure interprets undeclared relation '" + name + "'");
        if (! tuples.is_array())
            fail(ErrorCode::InputError, "relation '" + name + "' must be an array of tuples");
        for (auto & t : tuples)
            m.set_relation(name, int_vector(t, "relation '" + name + "'"));
    }
    auto funs = section("functions");
    for (auto & [name, arity] : sig.functions()) {
        if (! funs.contains(name))
            fail(ErrorCode::InputError, "structure does not interpret function '" + name + "'");
        auto & spec = funs[name];
        std::string what = "function '" + name + "'";
        if (arity == 1) {
            auto values = int_vector(spec, what);
            if (static_cast<int>(values.size()) != size)
                fail(ErrorCode::InputError, what + " needs one value per element");
            for (int x = 0; x < size; ++x)
                m.set_function(name, std::vector<int>{x}, values[static_cast<std::size_t>(x)]);
            continue;
        }
        if (! spec.is_array())
            fail(ErrorCode::InputError, what + " must be an array of [inputs, output] pairs");
        std::set<Tuple> seen;
        for (auto & pair : spec) {
            if (! pair.is_array() || pair.size() != 2)
                fail(ErrorCode::InputError, what + " must be an array of [inputs, output] pairs");
            auto args = int_vector(pair[0], what);
            if (! seen.insert(args).second)
                fail(ErrorCode::InputError, what + " defines an input twice");
            m.set_function(name, args, integer(pair[1], what));
        }
        if (seen.size() != ipow(size, arity))
            fail(ErrorCode::InputError, what + " is not total");
    }
    for (auto & [name, _] : funs.items())
        if (! sig.has_function(name))
            fail(ErrorCode::InputError, "structure interprets undeclared function '" + name + "'");
    auto consts = section("constants");
    for (auto & name : sig.constants()) {
        if (! consts.contains(name))
            fail(ErrorCode::InputError, "structure does not interpret constant '" + name + "'");
        m.set_constant(name, integer(consts[name], "constant '" + name + "'"));
    }
    for (auto & [name, _] : consts.items())
        if (! sig.has_constant(name))
            fail(ErrorCode::InputError, "structure interprets undeclared constant '" + name + "'");
    return m;
}

auto Reader::theory(const Json & raw) const -> Theory
{
    auto [r, j] = deref(raw);
    only_fields(j, {"name", "signature", "sentences"}, "theory");
    auto & name = field(j, "name", "theory");
    if (! name.is_string())
        fail(ErrorCode::InputError, "theory.name must be a string");
    auto sig = r.signature(field(j, "signature", "theory"));
    auto & sentences = field(j, "sentences", "theory");
    if (! sentences.is_array())
        fail(ErrorCode::InputError, "theory.sentences must be an array of strings");
    std::vector<std::string> texts;
    for (auto & s : sentences) {
        if (! s.is_string())
            fail(ErrorCode::InputError, "theory.sentences must be an array of strings");
        texts.push_back(s.get<std::string>());
    }
    return make_theory(name.get<std::string>(), std::move(sig), texts);
}

auto Reader::model_class(const Json & raw) const -> ModelClass
{
    auto [r, j] = deref(raw);
    if (! j.is_object())
        fail(ErrorCode::InputError, "class must be a JSON object");
    auto & kind = field(j, "kind", "class");
    if (kind == "bounded") {
        only_fields(j, {"kind", "theory", "maxSize"}, "class");
        int max_size = integer(field(j, "maxSize", "class"), "class.maxSize");
        if (max_size < 1)
            fail(ErrorCode::InputError, "class.maxSize must be positive");
        return ModelClass::bounded(r.theory(field(j, "theory", "class")), max_size);
    }
    if (kind == "explicit") {
        only_fields(j, {"kind", "signature", "structures"}, "class");
        auto & list = field(j, "structures", "class");
        if (! list.is_array())
            fail(ErrorCode::InputError, "class.structures must be an array");
        std::vector<FinStructure> members;
        for (auto & s : list)
            members.push_back(r.structure(s));
        Signature sig;
        if (j.contains("signature"))
            sig = r.signature(j["signature"]);
        else if (! members.empty())
            sig = members.front().signature();
        else
            fail(ErrorCode::InputError, "an empty explicit class needs a signature");
        return ModelClass::explicit_list(std::move(sig), members);
    }
    fail(ErrorCode::InputError, "class.kind must be \"bounded\" or \"explicit\"");
}

auto Reader::quintuple(const Json & raw) const -> Quintuple
{
    auto [r, j] = deref(raw);
    only_fields(j, {"A", "B", "C", "alpha", "beta"}, "quintuple");
    return make_quintuple(share(r.structure(field(j, "A", "quintuple"))), share(r.structure(field(j, "B", "quintuple"))),
        share(r.structure(field(j, "C", "quintuple"))), int_vector(field(j, "alpha", "quintuple"), "alpha"),
        int_vector(field(j, "beta", "quintuple"), "beta"));
}

auto Reader::witness(const Json & raw, const Quintuple & q, const Signature & l0) const -> SubcompatibleWitness
{
    auto [r, j] = deref(raw);
    only_fields(j, {"D0", "E", "F", "alpha1", "beta1", "iota0", "eta0"}, "witness");
    auto D0 = share(r.structure(field(j, "D0", "witness")));
    auto E = share(r.structure(field(j, "E", "witness")));
    auto F = share(r.structure(field(j, "F", "witness")));
    auto map = [&](const char * key) { return int_vector(field(j, key, "witness"), key); };
    return SubcompatibleWitness{D0, E, F, Morphism{q.A, D0, map("alpha1"), l0}, Morphism{q.B, D0, map("beta1"), l0},
        Morphism{D0, E, map("iota0"), l0}, Morphism{D0, F, map("eta0"), l0}};
}

auto Reader::certificate(const Json & raw, const Quintuple & q) const -> AmalgamCertificate
{
    auto [r, j] = deref(raw);
    only_fields(j, {"D", "iota", "eta", "strong", "verified", "quintuple"}, "certificate");
    auto D = share(r.structure(field(j, "D", "certificate")));
    auto & strong = field(j, "strong", "certificate");
    if (! strong.is_boolean())
        fail(ErrorCode::InputError, "certificate.strong must be a boolean");
    return AmalgamCertificate{D, Morphism{q.A, D, int_vector(field(j, "iota", "certificate"), "iota"), q.signature()},
        Morphism{q.B, D, int_vector(field(j, "eta", "certificate"), "eta"), q.signature()}, strong.get<bool>()};
}

} // namespace amalg::io
