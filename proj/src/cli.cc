#include <amalg/cli.hh>
#include <amalg/io.hh>

#include <fstream>
#include <iostream>
#include <sstream>

namespace amalg::cli {

namespace {

using io::Json;

struct Outcome {
    Json report;
    int code = Success;
    std::vector<std::string> lines; // human-readable summary
};

struct Context {
    const RunConfig & config;
    io::Reader reader;

    auto need(const std::string & path, const std::string & flag) const -> const std::string &
    {
        if (path.empty())
            fail(ErrorCode::InputError, "command '" + config.command + "' needs --" + flag);
        return path;
    }

    auto load(const std::string & path, const std::string & flag) const -> std::pair<io::Reader, Json>
    {
        return io::Reader::from_file(need(path, flag));
    }

    auto structure(const std::string & path, const std::string & flag) const -> StructurePtr
    {
        auto [r, j] = load(path, flag);
        return share(r.structure(j));
    }

    auto theory(const std::string & path, const std::string & flag) const -> Theory
    {
        auto [r, j] = load(path, flag);
        return r.theory(j);
    }

    auto model_class(const std::string & path, const std::string & flag) const -> ModelClass
    {
        auto [r, j] = load(path, flag);
        return r.model_class(j);
    }

    auto quintuple() const -> Quintuple
    {
        auto [r, j] = load(config.quintuple, "quintuple");
        return r.quintuple(j);
    }

    auto max_d(const ModelClass & k) const -> int
    {
        return config.max_amalgam_size > 0 ? config.max_amalgam_size : k.max_size();
    }

    auto ec_bounds(const ModelClass & k0) const -> EcBounds
    {
        return EcBounds{max_d(k0), config.max_tuple, config.workers};
    }

    auto chain_bounds(const ModelClass & k0) const -> ChainBounds
    {
        ChainBounds b;
        b.max_rounds = config.max_rounds;
        b.size_budget = config.size_budget;
        b.ec = ec_bounds(k0);
        b.ap_quintuple_bound = config.quintuple_bound;
        b.workers = config.workers;
        return b;
    }
};

auto ap_code(ApStatus s) -> int
{
    switch (s) {
        case ApStatus::Holds: return Success;
        case ApStatus::FailsAt: return Refuted;
        case ApStatus::Unknown: return Unknown;
    }
    return Unknown;
}

auto ec_code(EcStatus s) -> int
{
    switch (s) {
        case EcStatus::Verified: return Success;
        case EcStatus::Refuted: return Refuted;
        case EcStatus::Unknown: return Unknown;
    }
    return Unknown;
}

// Certificates leave the tool only after a fresh re-check.
auto checked(const Quintuple & q, const AmalgamCertificate & c) -> Json
{
    if (auto why = certificate_failure(q, c); ! why.empty())
        fail(ErrorCode::VerificationFailure, "emitted certificate does not verify: " + why);
    auto j = io::to_json(c);
    j["verified"] = true;
    return j;
}

auto run_eval(const Context & ctx) -> Outcome
{
    auto m = ctx.structure(ctx.config.structure, "structure");
    auto f = parse_formula(ctx.need(ctx.config.formula, "formula"), m->signature());
    bool value = evaluate(*m, f);
    return {Json{{"formula", to_string(f)}, {"value", value}}, value ? Success : Refuted,
        {to_string(f), value ? "true" : "false"}};
}

auto run_embeddings(const Context & ctx) -> Outcome
{
    auto dom = ctx.structure(ctx.config.dom, "dom");
    auto cod = ctx.structure(ctx.config.cod, "cod");
    EmbeddingSearch search;
    if (ctx.config.limit > 0)
        search.limit = static_cast<std::size_t>(ctx.config.limit);
    search.workers = ctx.config.workers;
    auto found = enumerate_embeddings(dom, cod, dom->signature(), search);
    Json maps = Json::array();
    std::vector<std::string> lines{std::to_string(found.size()) + " embedding(s)"};
    for (auto & h : found) {
        maps.push_back(h.map);
        lines.push_back(Json(h.map).dump());
    }
    return {Json{{"count", found.size()}, {"embeddings", maps}, {"over", io::to_json(dom->signature())}}, Success,
        lines};
}

auto run_enumerate(const Context & ctx) -> Outcome
{
    auto t = ctx.theory(ctx.config.theory, "theory");
    Json sizes = Json::array();
    std::vector<std::string> lines;
    for (int n = 1; n <= ctx.config.max_model_size; ++n) {
        auto models = enumerate_models(t, n, ctx.config.workers);
        Json list = Json::array();
        for (auto & m : models)
            list.push_back(io::to_json(m));
        sizes.push_back(Json{{"size", n}, {"count", models.size()}, {"models", list}});
        lines.push_back("size " + std::to_string(n) + ": " + std::to_string(models.size()) + " model(s)");
    }
    return {Json{{"theory", t.name}, {"sizes", sizes}}, Success, lines};
}

auto verdict_json(const ApVerdict & v) -> Json
{
    Json instances = Json::array();
    for (auto & inst : v.instances) {
        Json i{{"quintuple", io::to_json(inst.q)}};
        if (inst.certificate)
            i["certificate"] = checked(inst.q, *inst.certificate);
        if (inst.mediator)
            i["mediator"] = inst.mediator->map;
        instances.push_back(std::move(i));
    }
    Json j{{"status", std::string(to_string(v.status))}, {"instances", instances}};
    if (v.counterexample)
        j["counterexample"] = io::to_json(*v.counterexample);
    return j;
}

auto run_check_ap(const Context & ctx) -> Outcome
{
    auto & cfg = ctx.config;
    auto k = ctx.model_class(cfg.model_class, "class");
    ApVerdict v;
    if (! cfg.base_class.empty()) {
        auto k0 = ctx.model_class(cfg.base_class, "base-class");
        v = check_ap_over_pushouts(k, k0, cfg.closure, cfg.quintuple_bound, ctx.max_d(k), cfg.workers);
    }
    else
        v = check_ap(k, cfg.quintuple_bound, ctx.max_d(k),
            ApOptions{cfg.pushout_first, cfg.closure, cfg.require_strong, cfg.workers});
    std::vector<std::string> lines{"amalgamation property: " + std::string(to_string(v.status)),
        std::to_string(v.instances.size()) + " quintuple(s) checked"};
    return {verdict_json(v), ap_code(v.status), lines};
}

auto run_pushout(const Context & ctx) -> Outcome
{
    auto & cfg = ctx.config;
    auto q = ctx.quintuple();
    auto emit = [](const Pushout & p) {
        return Json{{"D", io::to_json(*p.D)}, {"iota", p.iota.map}, {"eta", p.eta.map}};
    };
    if (cfg.kind == "empty") {
        auto p = pushout_empty(q);
        return {Json{{"kind", "empty"}, {"pushout", emit(p)}}, Success,
            {"empty-signature pushout of size " + std::to_string(p.D->size())}};
    }
    if (cfg.kind != "relational")
        fail(ErrorCode::InputError, "--kind must be empty or relational");
    auto v = pushout_relational(q, cfg.closure);
    Json j{{"kind", "relational"}};
    if (cfg.closure)
        j["closure"] = *cfg.closure;
    if (! v.pushout) {
        j["closure_failure"] = v.closure_failure;
        return {j, Refuted, {"no pushout: " + v.closure_failure}};
    }
    j["pushout"] = emit(*v.pushout);
    return {j, Success, {"relational pushout of size " + std::to_string(v.pushout->D->size())}};
}

auto run_ec(const Context & ctx) -> Outcome
{
    auto & cfg = ctx.config;
    auto k0 = ctx.model_class(cfg.model_class, "class");
    auto bounds = ctx.ec_bounds(k0);
    if (cfg.compatibility) {
        auto t = ctx.theory(cfg.theory, "theory");
        auto c = check_ec_compatibility(t, k0, cfg.max_model_size, bounds);
        Json j{{"mode", "compatibility"}, {"status", std::string(to_string(c.status))},
            {"models_checked", c.models_checked}};
        if (c.model) {
            j["model"] = io::to_json(*c.model);
            j["reason"] = c.reason;
        }
        if (c.condition)
            j["condition"] = c.condition;
        std::vector<std::string> lines{"e.c. compatibility: " + std::string(to_string(c.status))};
        if (! c.reason.empty())
            lines.push_back(c.reason);
        return {j, ec_code(c.status), lines};
    }
    auto m = ctx.structure(cfg.structure, "structure");
    auto v = is_ec(*m, k0, bounds);
    auto j = io::to_json(v);
    j["mode"] = "structure";
    std::vector<std::string> lines{"existentially complete: " + std::string(to_string(v.status))};
    if (v.counterexample)
        lines.push_back("counterexample: " + to_string(v.counterexample->in_e) + " fails");
    return {j, ec_code(v.status), lines};
}

auto run_verify(const Context & ctx) -> Outcome
{
    auto & cfg = ctx.config;
    auto [r, j] = io::Reader::from_file(cfg.verify);
    if (! j.is_object())
        fail(ErrorCode::InputError, "certificate must be a JSON object");
    // An amalgam report carries the certificate next to its quintuple.
    if (j.contains("certificate")) {
        auto cert = j["certificate"];
        if (j.contains("quintuple"))
            cert["quintuple"] = j["quintuple"];
        j = std::move(cert);
    }
    std::optional<Quintuple> q;
    if (j.contains("quintuple"))
        q = r.quintuple(j["quintuple"]);
    else
        q = ctx.quintuple();
    auto c = r.certificate(j, *q);
    auto why = certificate_failure(*q, c);
    for (auto * path : {&cfg.theory, &cfg.theory2})
        if (why.empty() && ! path->empty()) {
            auto t = ctx.theory(*path, "theory");
            if (! t.sig.is_subsignature_of(c.D->signature()) || ! models_theory(reduct(*c.D, t.sig), t))
                why = "D is not a model of '" + t.name + "'";
        }
    if (why.empty() && ! cfg.model_class.empty() && ! contains(ctx.model_class(cfg.model_class, "class"), *c.D))
        why = "D is not in the class";
    Json out{{"verified", why.empty()}};
    if (! why.empty()) {
        out["error"] = std::string(to_string(ErrorCode::InvalidCertificate));
        out["reason"] = why;
        return {out, Refuted, {"certificate rejected: " + why}};
    }
    return {out, Success, {"certificate verified"}};
}

auto run_amalgam(const Context & ctx) -> Outcome
{
    auto & cfg = ctx.config;
    if (! cfg.verify.empty())
        return run_verify(ctx);
    auto q = ctx.quintuple();
    std::optional<AmalgamCertificate> cert;
    Json j{{"method", cfg.method}};
    if (cfg.method == "search") {
        auto k = ctx.model_class(cfg.model_class, "class");
        int max_d = ctx.max_d(k);
        cert = find_amalgam(q, k, k, max_d, AmalgamSearch{cfg.require_strong, cfg.workers});
        if (! cert) {
            bool exhaustive = max_d >= k.max_size();
            j["status"] = exhaustive ? "fails" : "unknown";
            return {j, exhaustive ? Refuted : Unknown, {"no amalgam of size <= " + std::to_string(max_d)}};
        }
    }
    else {
        auto t1 = ctx.theory(cfg.theory, "theory");
        auto t2 = ctx.theory(cfg.theory2, "theory2");
        if (cfg.method == "prop41c") {
            auto r = prop41c_amalgam(q, t1, t2, cfg.closure);
            if (! r.certificate) {
                j["status"] = "fails";
                j["closure_failure"] = r.closure_failure;
                return {j, Refuted, {"no amalgam: " + r.closure_failure}};
            }
            cert = std::move(r.certificate);
        }
        else if (cfg.method == "prop41a" || cfg.method == "prop41b") {
            auto [r, wj] = ctx.load(cfg.witness, "witness");
            auto w = r.witness(wj, q, sig_intersect(t1.sig, t2.sig));
            cert = cfg.method == "prop41a" ? prop41a_amalgam(q, w, t1, t2) : prop41b_amalgam(q, w, t1, t2);
        }
        else
            fail(ErrorCode::InputError, "--method must be search, prop41a, prop41b or prop41c");
    }
    j["status"] = "found";
    j["certificate"] = checked(q, *cert);
    j["quintuple"] = io::to_json(q);
    return {j, Success,
        {"amalgam of size " + std::to_string(cert->D->size()) + (cert->strong ? " (strong)" : ""),
            "certificate verified"}};
}

auto fusion_summary(const FusionResult & f) -> std::vector<std::string>
{
    return {"fused model of size " + std::to_string(f.G->size()) + " after " + std::to_string(f.rounds) + " round(s)",
        "shared reduct e.c.: " + std::string(to_string(f.ec_flag.status)),
        f.ap_tainted ? "warning: base class AP not established within bounds" : "base class AP holds within bounds"};
}

auto run_combine(const Context & ctx) -> Outcome
{
    auto & cfg = ctx.config;
    auto t1 = ctx.theory(cfg.theory, "theory");
    auto t2 = ctx.theory(cfg.theory2, "theory2");
    auto k0 = ctx.model_class(cfg.base_class, "base-class");
    auto bounds = ctx.chain_bounds(k0);
    Json j;
    if (! cfg.structure.empty()) {
        auto c = ctx.structure(cfg.structure, "structure");
        auto r = theorem31(c, t1, t2, k0, bounds);
        j["mode"] = "structure";
        if (! r.fusion) {
            j["status"] = "none";
            j["reason"] = r.none_reason;
            return {j, Unknown, {"nothing found within bounds: " + r.none_reason}};
        }
        j["status"] = "found";
        j["fusion"] = io::to_json(*r.fusion);
        j["embedding"] = r.embedding->map;
        return {j, Success, fusion_summary(*r.fusion)};
    }
    auto [r, cj] = ctx.load(cfg.chain_input, "chain-input or --structure");
    for (auto & [key, _] : cj.items())
        if (key != "D0" && key != "E" && key != "F" && key != "iota0" && key != "eta0")
            fail(ErrorCode::InputError, "unknown field '" + key + "' in chain input");
    auto get = [&](const char * key) -> const Json & {
        if (! cj.contains(key))
            fail(ErrorCode::InputError, std::string("chain input is missing field '") + key + "'");
        return cj[key];
    };
    auto d0 = share(r.structure(get("D0")));
    auto e = share(r.structure(get("E")));
    auto f = share(r.structure(get("F")));
    auto l0 = sig_intersect(t1.sig, t2.sig);
    Morphism iota0{d0, e, io::int_vector(get("iota0"), "iota0"), l0};
    Morphism eta0{d0, f, io::int_vector(get("eta0"), "eta0"), l0};
    auto res = lemma21(d0, e, f, iota0, eta0, t1, t2, k0, bounds);
    j["mode"] = "chain";
    if (! res.fusion) {
        j["status"] = "none";
        j["reason"] = res.none_reason;
        return {j, Unknown, {"nothing found within bounds: " + res.none_reason}};
    }
    j["status"] = "found";
    j["fusion"] = io::to_json(*res.fusion);
    return {j, Success, fusion_summary(*res.fusion)};
}

auto run_union_ap(const Context & ctx) -> Outcome
{
    auto & cfg = ctx.config;
    auto t1 = ctx.theory(cfg.theory, "theory");
    auto t2 = ctx.theory(cfg.theory2, "theory2");
    auto k0 = ctx.model_class(cfg.base_class, "base-class");
    auto bounds = ctx.chain_bounds(k0);
    WitnessSearch ws;
    ws.max_d0 = ws.max_e = ws.max_f = cfg.max_model_size;
    ws.pushout_first = cfg.pushout_first;
    ws.closure = cfg.closure;
    ws.workers = cfg.workers;

    std::vector<Quintuple> qs;
    if (! cfg.quintuple.empty())
        qs.push_back(ctx.quintuple());
    else {
        Theory u{t1.name + "+" + t2.name, sig_union(t1.sig, t2.sig), t1.sentences};
        u.sentences.insert(u.sentences.end(), t2.sentences.begin(), t2.sentences.end());
        qs = enumerate_quintuples(ModelClass::bounded(u, cfg.quintuple_bound), cfg.quintuple_bound, cfg.workers);
    }

    Json instances = Json::array();
    int found = 0, none = 0;
    for (auto & q : qs) {
        auto r = theorem34(q, t1, t2, k0, bounds, ws);
        Json i{{"quintuple", io::to_json(q)}};
        if (r.certificate) {
            ++found;
            i["status"] = "found";
            i["certificate"] = checked(q, *r.certificate);
            i["witness"] = io::to_json(*r.witness);
            i["rounds"] = r.fusion->rounds;
            i["ap_tainted"] = r.fusion->ap_tainted;
        }
        else {
            ++none;
            i["status"] = "none";
            i["phase"] = r.none_phase;
            i["reason"] = r.none_reason;
        }
        instances.push_back(std::move(i));
    }
    Json j{{"instances", instances}, {"found", found}, {"none", none}, {"status", none ? "unknown" : "holds"}};
    return {j, none ? Unknown : Success,
        {std::to_string(found) + " of " + std::to_string(qs.size()) + " quintuple(s) amalgamated",
            none ? "some quintuples found nothing within bounds" : "all quintuples amalgamated"}};
}

auto error_code(ErrorCode c) -> int
{
    switch (c) {
        case ErrorCode::VerificationFailure:
        case ErrorCode::AssertionFailure: return InternalFailure;
        case ErrorCode::InvalidCertificate:
        case ErrorCode::InvalidWitness:
        case ErrorCode::WellDefinednessFailure:
        case ErrorCode::InducedRelationConflict: return Refuted;
        default: return BadInput;
    }
}

void validate(const RunConfig & c)
{
    auto check = [](bool ok, const char * what) {
        if (! ok)
            fail(ErrorCode::InputError, what);
    };
    check(c.workers >= 1, "--workers must be at least 1");
    check(c.max_model_size >= 1, "--max-model-size must be positive");
    check(c.max_amalgam_size >= 0, "--max-d must not be negative");
    check(c.max_tuple >= 0, "--max-tuple must not be negative");
    check(c.max_rounds >= 0, "--max-rounds must not be negative");
    check(c.size_budget >= 0, "--size-budget must not be negative");
    check(c.quintuple_bound >= 1, "--quintuple-bound must be positive");
    check(c.limit >= 0, "--limit must not be negative");
    check(c.format == "human" || c.format == "json", "--format must be human or json");
}

auto bounds_echo(const RunConfig & c) -> Json
{
    return Json{{"max_model_size", c.max_model_size}, {"max_amalgam_size", c.max_amalgam_size},
        {"max_tuple", c.max_tuple}, {"max_rounds", c.max_rounds}, {"size_budget", c.size_budget},
        {"quintuple_bound", c.quintuple_bound}};
}

} // namespace

auto run(const RunConfig & config, std::ostream & out, std::ostream & err) -> int
{
    Outcome result;
    try {
        validate(config);
        Context ctx{config, io::Reader{}};
        const std::map<std::string, Outcome (*)(const Context &)> commands{{"eval", run_eval},
            {"embeddings", run_embeddings}, {"enumerate", run_enumerate}, {"check-ap", run_check_ap},
            {"pushout", run_pushout}, {"ec", run_ec}, {"amalgam", run_amalgam}, {"combine", run_combine},
            {"union-ap", run_union_ap}};
        auto it = commands.find(config.command);
        if (it == commands.end())
            fail(ErrorCode::InputError, "unknown command '" + config.command + "'");
        result = it->second(ctx);
    }
    catch (const Error & e) {
        result.code = error_code(e.code());
        result.report = Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
        result.lines = {e.what()};
        err << "error: " << e.what() << "\n";
    }
    result.report["command"] = config.command;
    result.report["bounds"] = bounds_echo(config);
    result.report["exit_code"] = result.code;

    std::ostringstream text;
    if (config.format == "json")
        text << result.report.dump(2) << "\n";
    else
        for (auto & line : result.lines)
            text << line << "\n";

    if (config.output.empty())
        out << text.str();
    else {
        std::ofstream file(config.output);
        if (! file) {
            err << "error: cannot write '" << config.output << "'\n";
            return BadInput;
        }
        file << text.str();
    }
    return result.code;
}

} // namespace amalg::cli
