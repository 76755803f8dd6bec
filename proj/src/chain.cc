#include <amalg/chain.hh>

#include <algorithm>

namespace amalg {

auto to_string(Side s) -> std::string_view
{
    return s == Side::E ? "E" : "F";
}

namespace {

auto other(Side s) -> Side
{
    return s == Side::E ? Side::F : Side::E;
}

auto name(Side s, int index) -> std::string
{
    return std::string(to_string(s)) + std::to_string(index);
}

auto side_models(const ChainState & s, Side side) -> const std::vector<StructurePtr> &
{
    return side == Side::E ? s.e_side : s.f_side;
}

auto side_connects(const ChainState & s, Side side) -> const std::vector<Morphism> &
{
    return side == Side::E ? s.e_connect : s.f_connect;
}

auto side_signature(const ChainState & s, Side side) -> const Signature &
{
    return side == Side::E ? s.l1 : s.l2;
}

// Map from model `from` to model `to` along one side's connecting maps.
auto along(const ChainState & s, Side side, int from, int to) -> std::vector<int>
{
    auto & connects = side_connects(s, side);
    std::vector<int> map(static_cast<std::size_t>(side_models(s, side)[static_cast<std::size_t>(from)]->size()));
    for (std::size_t i = 0; i < map.size(); ++i)
        map[i] = static_cast<int>(i);
    for (int k = from; k < to; ++k)
        for (auto & v : map)
            v = connects[static_cast<std::size_t>(k)].map[static_cast<std::size_t>(v)];
    return map;
}

auto from_base(const ChainState & s, Side side, int index) -> std::vector<int>
{
    auto map = side == Side::E ? s.iota0.map : s.eta0.map;
    auto path = along(s, side, 0, index);
    for (auto & v : map)
        v = path[static_cast<std::size_t>(v)];
    return map;
}

auto then(const std::vector<int> & first, const std::vector<int> & second) -> std::vector<int>
{
    std::vector<int> out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        out[i] = second[static_cast<std::size_t>(first[i])];
    return out;
}

void append(ChainState & s, Side side, StructurePtr model, Morphism connect, std::optional<Morphism> cross,
    int cross_from)
{
    auto & models = side == Side::E ? s.e_side : s.f_side;
    auto & connects = side == Side::E ? s.e_connect : s.f_connect;
    models.push_back(model);
    connects.push_back(connect);
    s.steps.push_back(ChainStep{side, static_cast<int>(models.size()) - 1, std::move(model), std::move(connect),
        std::move(cross), cross_from, {}});
    auto check = check_chain(s);
    if (! check.failed.empty())
        fail(ErrorCode::VerificationFailure, "chain diagram does not commute: " + check.failed.front());
    s.steps.back().verified = std::move(check.verified);
}

} // namespace

auto start_chain(StructurePtr d0, StructurePtr e, StructurePtr f, Morphism iota0, Morphism eta0,
    const Theory & t1, const Theory & t2) -> ChainState
{
    ChainState s;
    s.l1 = t1.sig;
    s.l2 = t2.sig;
    s.l0 = sig_intersect(t1.sig, t2.sig);
    s.d0 = std::move(d0);
    s.iota0 = std::move(iota0);
    s.eta0 = std::move(eta0);
    s.e_side.push_back(std::move(e));
    s.f_side.push_back(std::move(f));
    return s;
}

auto check_chain(const ChainState & s) -> ChainCheck
{
    ChainCheck out;
    auto record = [&](bool ok, std::string eq) { (ok ? out.verified : out.failed).push_back(std::move(eq)); };
    const ChainStep * previous_cross = nullptr;
    for (auto & step : s.steps) {
        record(verify_embedding(step.connect),
            name(step.side, step.index - 1) + "->" + name(step.side, step.index) + " embeds");
        if (! step.cross)
            continue;
        Side o = other(step.side);
        record(verify_embedding(*step.cross),
            name(o, step.cross_from) + "->" + name(step.side, step.index) + " embeds over L0");
        auto via_cross = then(from_base(s, o, step.cross_from), step.cross->map);
        record(via_cross == from_base(s, step.side, step.index),
            "D0->" + name(o, step.cross_from) + "->" + name(step.side, step.index) + " = D0->"
                + name(step.side, step.index));
        if (previous_cross && previous_cross->side == o && previous_cross->index == step.cross_from) {
            auto zig = then(previous_cross->cross->map, step.cross->map);
            record(zig == along(s, step.side, previous_cross->cross_from, step.index),
                name(step.side, previous_cross->cross_from) + "->" + name(o, step.cross_from) + "->"
                    + name(step.side, step.index) + " = " + name(step.side, previous_cross->cross_from) + "->"
                    + name(step.side, step.index));
        }
        previous_cross = &step;
    }
    return out;
}

auto saturate_ec(const StructurePtr & m, const Theory & t, const ModelClass & k0, int max_size,
    const EcBounds & bounds) -> std::optional<EcExtension>
{
    return ec_closure(m, t, k0, max_size, bounds);
}

auto saturate_side(const ChainState & s, Side side, const Theory & t, const ModelClass & k0, int max_size,
    const EcBounds & bounds) -> std::optional<ChainState>
{
    auto ext = saturate_ec(s.tip(side), t, k0, max_size, bounds);
    if (! ext)
        return std::nullopt;
    ChainState next = s;
    if (ext->B != s.tip(side))
        append(next, side, ext->B, ext->embedding, std::nullopt, -1);
    return next;
}

auto zigzag_step(const ChainState & s, Side side, const Theory & t_side, const ModelClass & k0,
    const ChainBounds & bounds) -> std::optional<ChainState>
{
    Side o = other(side);
    auto & tip = s.tip(side);
    auto & other_tip = s.tip(o);
    int tip_index = static_cast<int>(side_models(s, side).size()) - 1;
    int other_index = static_cast<int>(side_models(s, o).size()) - 1;
    auto & sig = side_signature(s, side);

    // The previous cross map, if it runs from this side's tip to the other tip.
    const Morphism * previous = nullptr;
    for (auto it = s.steps.rbegin(); it != s.steps.rend(); ++it)
        if (it->cross) {
            if (it->side == o && it->index == other_index && it->cross_from == tip_index)
                previous = &*it->cross;
            break;
        }
    auto base_other = from_base(s, o, other_index);
    auto base_tip = from_base(s, side, tip_index);

    int budget = bounds.size_budget > 0 ? bounds.size_budget : s.e_side.front()->size() + s.f_side.front()->size() + 4;
    int cap = std::min(budget, k0.max_size());
    auto candidates = ModelClass::bounded(t_side, cap);
    for (auto & next : iterate(candidates, cap, bounds.workers)) {
        if (next->size() < std::max(tip->size(), other_tip->size()))
            continue;
        for (auto & connect : enumerate_embeddings(tip, next, sig)) {
            std::vector<int> fixed(static_cast<std::size_t>(other_tip->size()), -1);
            if (previous)
                for (std::size_t x = 0; x < connect.map.size(); ++x)
                    fixed[static_cast<std::size_t>(previous->map[x])] = connect.map[x];
            else
                for (std::size_t d = 0; d < base_other.size(); ++d)
                    fixed[static_cast<std::size_t>(base_other[d])] = connect.map[static_cast<std::size_t>(base_tip[d])];
            auto cross = first_embedding(other_tip, next, s.l0, fixed);
            if (! cross)
                continue;
            auto ext = saturate_ec(next, t_side, k0, cap, bounds.ec);
            if (! ext)
                continue;
            ChainState out = s;
            if (ext->B == next)
                append(out, side, next, connect, *cross, other_index);
            else
                append(out, side, ext->B, compose(connect, ext->embedding), compose(*cross, ext->embedding),
                    other_index);
            return out;
        }
    }
    return std::nullopt;
}

auto detect_stabilization(const ChainState & s) -> std::optional<Morphism>
{
    std::vector<const ChainStep *> crosses;
    for (auto & step : s.steps)
        if (step.cross)
            crosses.push_back(&step);
    if (crosses.size() < 2)
        return std::nullopt;
    auto & last = *crosses.back();
    auto & before = *crosses[crosses.size() - 2];
    bool tips = last.index == static_cast<int>(side_models(s, last.side).size()) - 1
        && last.cross_from == static_cast<int>(side_models(s, other(last.side)).size()) - 1;
    bool paired = before.side == other(last.side) && before.index == last.cross_from;
    if (! tips || ! paired || ! is_bijective(*last.cross) || ! is_bijective(*before.cross))
        return std::nullopt;
    if (then(before.cross->map, last.cross->map) != along(s, last.side, before.cross_from, last.index))
        return std::nullopt;
    return last.side == Side::E ? *last.cross : inverse(*last.cross);
}

auto fuse(const ChainState & s, const Morphism & kappa, const Theory & t1, const Theory & t2, const ModelClass & k0,
    const EcBounds & bounds) -> FusionResult
{
    auto & e_tip = s.tip(Side::E);
    auto & f_tip = s.tip(Side::F);
    if (kappa.dom->size() != f_tip->size() || kappa.cod->size() != e_tip->size() || ! is_bijective(kappa))
        fail(ErrorCode::VerificationFailure, "kappa is not a bijection from the F tip to the E tip");
    if (auto why = embedding_failure(Morphism{f_tip, e_tip, kappa.map, s.l0}); ! why.empty())
        fail(ErrorCode::VerificationFailure, "kappa is not an isomorphism of the shared reducts: " + why);

    auto delta = sig_difference(s.l2, s.l0);
    auto G = share(transport(*e_tip, delta, *f_tip, kappa.map));

    int e_last = static_cast<int>(s.e_side.size()) - 1, f_last = static_cast<int>(s.f_side.size()) - 1;
    Morphism iota{s.e_side.front(), G, along(s, Side::E, 0, e_last), s.l1};
    Morphism eta{s.f_side.front(), G, then(along(s, Side::F, 0, f_last), kappa.map), s.l2};

    if (! models_theory(*G, t1) || ! models_theory(*G, t2))
        fail(ErrorCode::VerificationFailure, "fused structure is not a model of both theories");
    if (auto why = embedding_failure(iota); ! why.empty())
        fail(ErrorCode::VerificationFailure, "iota is not an embedding: " + why);
    if (auto why = embedding_failure(eta); ! why.empty())
        fail(ErrorCode::VerificationFailure, "eta is not an embedding: " + why);
    if (then(s.iota0.map, iota.map) != then(s.eta0.map, eta.map))
        fail(ErrorCode::VerificationFailure, "the square over D0 does not commute");

    auto flag = is_ec(reduct(*G, s.l0), k0, bounds);
    return FusionResult{G, std::move(iota), std::move(eta), s, std::move(flag), 0, false};
}

auto lemma21(const StructurePtr & d0, const StructurePtr & e, const StructurePtr & f, const Morphism & iota0,
    const Morphism & eta0, const Theory & t1, const Theory & t2, const ModelClass & k0, const ChainBounds & bounds)
    -> Lemma21Result
{
    auto l0 = sig_intersect(t1.sig, t2.sig);
    auto hypothesis = [](bool ok, const std::string & what) {
        if (! ok)
            fail(ErrorCode::HypothesisFailure, what);
    };
    hypothesis(k0.signature() == l0, "base class signature must be the shared signature");
    hypothesis(is_inductive(t1), "first theory is not inductive");
    hypothesis(is_inductive(t2), "second theory is not inductive");
    hypothesis(e->signature() == t1.sig && models_theory(*e, t1), "E is not a model of the first theory");
    hypothesis(f->signature() == t2.sig && models_theory(*f, t2), "F is not a model of the second theory");
    hypothesis(d0->signature() == l0 && contains(k0, *d0), "D0 is not in the base class");
    hypothesis(contains(k0, reduct(*e, l0)) && contains(k0, reduct(*f, l0)), "a reduct of E or F is not in the base class");
    auto valid = [&](const Morphism & h, const StructurePtr & cod) {
        return static_cast<int>(h.map.size()) == d0->size()
            && std::all_of(h.map.begin(), h.map.end(), [&](int v) { return v >= 0 && v < cod->size(); })
            && verify_embedding(Morphism{d0, cod, h.map, l0});
    };
    hypothesis(valid(iota0, e), "iota0 is not an embedding of the shared reducts");
    hypothesis(valid(eta0, f), "eta0 is not an embedding of the shared reducts");

    auto ap = check_ap(k0, bounds.ap_quintuple_bound, k0.max_size(), {false, std::nullopt, false, bounds.workers});
    bool tainted = ap.status != ApStatus::Holds;

    Lemma21Result out;
    if (bounds.max_rounds <= 0) {
        out.none_reason = "no rounds allowed";
        return out;
    }
    int budget = bounds.size_budget > 0 ? bounds.size_budget : e->size() + f->size() + 4;
    int cap = std::min(budget, k0.max_size());

    auto state = start_chain(d0, e, f, Morphism{d0, e, iota0.map, l0}, Morphism{d0, f, eta0.map, l0}, t1, t2);
    for (auto [side, t] : {std::pair{Side::E, &t1}, std::pair{Side::F, &t2}}) {
        auto next = saturate_side(state, side, *t, k0, cap, bounds.ec);
        if (! next) {
            out.none_reason = "no e.c. saturation of " + std::string(to_string(side)) + " within bounds";
            return out;
        }
        state = std::move(*next);
    }

    for (int round = 1; round <= bounds.max_rounds; ++round)
        for (auto [side, t] : {std::pair{Side::E, &t1}, std::pair{Side::F, &t2}}) {
            auto next = zigzag_step(state, side, *t, k0, bounds);
            if (! next) {
                out.none_reason = "no model extends side " + std::string(to_string(side)) + " in round "
                    + std::to_string(round) + " within bounds";
                return out;
            }
            state = std::move(*next);
            if (auto kappa = detect_stabilization(state)) {
                auto fused = fuse(state, *kappa, t1, t2, k0, bounds.ec);
                fused.rounds = round;
                fused.ap_tainted = tainted;
                out.fusion = std::move(fused);
                return out;
            }
        }
    out.none_reason = "chain did not stabilize within " + std::to_string(bounds.max_rounds) + " rounds";
    return out;
}

auto theorem31(const StructurePtr & c, const Theory & t1, const Theory & t2, const ModelClass & k0,
    const ChainBounds & bounds) -> Theorem31Result
{
    auto l0 = sig_intersect(t1.sig, t2.sig);
    auto l = sig_union(t1.sig, t2.sig);
    if (c->signature() != l || ! models_theory(*c, t1) || ! models_theory(*c, t2))
        fail(ErrorCode::HypothesisFailure, "structure is not a model of both theories");
    auto d0 = share(reduct(*c, l0));
    auto e = share(reduct(*c, t1.sig));
    auto f = share(reduct(*c, t2.sig));
    auto run = lemma21(d0, e, f, identity(d0), identity(d0), t1, t2, k0, bounds);

    Theorem31Result out;
    if (! run.fusion) {
        out.none_reason = run.none_reason;
        return out;
    }
    if (run.fusion->iota.map != run.fusion->eta.map)
        fail(ErrorCode::AssertionFailure, "the two embeddings into the fused model differ");
    Morphism h{c, run.fusion->G, run.fusion->iota.map, l};
    if (auto why = embedding_failure(h); ! why.empty())
        fail(ErrorCode::VerificationFailure, "embedding into the fused model fails: " + why);
    out.embedding = std::move(h);
    out.fusion = std::move(run.fusion);
    return out;
}

auto theorem34(const Quintuple & q, const Theory & t1, const Theory & t2, const ModelClass & k0,
    const ChainBounds & bounds, const WitnessSearch & witness) -> Theorem34Result
{
    for (auto * m : {q.A.get(), q.B.get(), q.C.get()})
        if (! models_theory(*m, t1) || ! models_theory(*m, t2))
            fail(ErrorCode::HypothesisFailure, "quintuple structure is not a model of both theories");

    Theorem34Result out;
    out.witness = find_subcompatible_witness(q, k0, t1, t2, witness);
    if (! out.witness) {
        out.none_phase = "witness";
        out.none_reason = "no subcompatible witness within bounds";
        return out;
    }
    auto & w = *out.witness;
    auto run = lemma21(w.D0, w.E, w.F, w.iota0, w.eta0, t1, t2, k0, bounds);
    if (! run.fusion) {
        out.none_phase = "chain";
        out.none_reason = run.none_reason;
        return out;
    }
    auto & G = run.fusion->G;
    auto alpha_star = then(then(w.alpha1.map, w.iota0.map), run.fusion->iota.map);
    auto beta_star = then(then(w.beta1.map, w.iota0.map), run.fusion->iota.map);
    auto cert = make_certificate(q, G, std::move(alpha_star), std::move(beta_star));
    if (auto why = certificate_failure(q, cert); ! why.empty())
        fail(ErrorCode::VerificationFailure, "assembled amalgam does not verify: " + why);
    out.certificate = std::move(cert);
    out.fusion = std::move(run.fusion);
    return out;
}

} // namespace amalg
