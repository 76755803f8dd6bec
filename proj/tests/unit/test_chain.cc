#include "../support/fixtures.hh"
#include "../support/oracles.hh"

#include <doctest.h>

using namespace amalg;
using namespace fixtures;

namespace {

auto t1() -> Theory { return posets_with("f"); }
auto t2() -> Theory { return posets_with("g"); }

auto chain_bounds(int k0_size) -> ChainBounds
{
    ChainBounds b;
    b.ec.max_d = k0_size;
    b.ec.max_tuple = k0_size;
    return b;
}

auto ids(int n) -> std::vector<int>
{
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = i;
    return v;
}

// base with an identity unary function called fn.
auto with_identity(const FinStructure & base, const std::string & fn) -> FinStructure
{
    Interpretations x;
    x.functions[fn] = ids(base.size());
    return expand(base, Signature({}, {{fn, 1}}, {}), x);
}

struct Toy {
    StructurePtr d0, e, f;
    Morphism iota0, eta0;
};

// D0 = base, E and F its expansions by identity functions, identity base maps.
auto toy(const FinStructure & base) -> Toy
{
    auto d0 = sp(base);
    auto e = sp(with_identity(base, "f"));
    auto f = sp(with_identity(base, "g"));
    return {d0, e, f, make_morphism(d0, e, ids(base.size()), leq_sig()),
        make_morphism(d0, f, ids(base.size()), leq_sig())};
}

auto start(const Toy & t) -> ChainState { return start_chain(t.d0, t.e, t.f, t.iota0, t.eta0, t1(), t2()); }

auto run(const Toy & t, const ModelClass & k0, const ChainBounds & b) -> Lemma21Result
{
    return lemma21(t.d0, t.e, t.f, t.iota0, t.eta0, t1(), t2(), k0, b);
}

// Fresh checks of a fusion result, independent of the chain's own verification.
auto fusion_holds(const FusionResult & r, const Toy & t) -> bool
{
    auto l1 = t1().sig, l2 = t2().sig;
    auto G1 = reduct(*r.G, l1), G2 = reduct(*r.G, l2);
    bool ok = oracle::is_embedding(*t.e, G1, r.iota.map, l1) && oracle::is_embedding(*t.f, G2, r.eta.map, l2)
        && oracle::satisfies(*r.G, t1()) && oracle::satisfies(*r.G, t2());
    for (int d = 0; d < t.d0->size(); ++d) {
        auto i = static_cast<std::size_t>(d);
        ok = ok
            && r.iota.map[static_cast<std::size_t>(t.iota0.map[i])] == r.eta.map[static_cast<std::size_t>(t.eta0.map[i])];
    }
    return ok;
}

} // namespace

TEST_CASE("saturate_ec")
{
    auto k2 = ModelClass::bounded(posets(), 2);
    auto b = saturate_ec(sp(chain(1, sig_f())), t1(), k2, 2, chain_bounds(2).ec);
    REQUIRE(b.has_value());
    CHECK(b->B->size() == 2);
    CHECK(b->embedding.over == sig_f());
    CHECK(verify_embedding(b->embedding));
    auto c2 = sp(chain(2, sig_f()));
    CHECK(saturate_ec(c2, t1(), k2, 2, chain_bounds(2).ec)->B == c2);
    CHECK(! saturate_ec(sp(chain(1, sig_f())), t1(), k2, 1, chain_bounds(2).ec).has_value());
}

TEST_CASE("start_chain")
{
    auto s = start(toy(chain(2)));
    CHECK(s.l0 == leq_sig());
    CHECK(s.l1 == sig_f());
    CHECK(s.l2 == sig_g());
    CHECK(s.e_side.size() == 1);
    CHECK(s.f_side.size() == 1);
    CHECK(s.steps.empty());
    CHECK(check_chain(s).failed.empty());
    CHECK(! detect_stabilization(s).has_value());
}

TEST_CASE("zigzag_step on a single point")
{
    auto t = toy(chain(1));
    auto k1 = ModelClass::bounded(posets(), 1);
    auto s = start(t);
    auto zig = zigzag_step(s, Side::E, t1(), k1, chain_bounds(1));
    REQUIRE(zig.has_value());
    CHECK(zig->tip(Side::E)->size() == 1);
    REQUIRE(zig->steps.back().cross.has_value());
    CHECK(zig->steps.back().cross->map == std::vector<int>{0});
    auto zag = zigzag_step(*zig, Side::F, t2(), k1, chain_bounds(1));
    REQUIRE(zag.has_value());
    auto kappa = detect_stabilization(*zag);
    REQUIRE(kappa.has_value());
    CHECK(kappa->map == std::vector<int>{0});
    auto g = fuse(*zag, *kappa, t1(), t2(), k1, chain_bounds(1).ec);
    CHECK(g.G->size() == 1);
    CHECK(*g.G == chain(1, sig_fg()));
    CHECK(g.ec_flag.status == EcStatus::Verified);
}

TEST_CASE("zigzag on the 2-chain toy stabilizes after one round")
{
    auto t = toy(chain(2));
    auto k2 = ModelClass::bounded(posets(), 2);
    auto s = start(t);
    auto zig = zigzag_step(s, Side::E, t1(), k2, chain_bounds(2));
    REQUIRE(zig.has_value());
    CHECK(*zig->tip(Side::E) == *t.e);
    CHECK(zig->steps.back().cross->map == std::vector<int>{0, 1});
    CHECK(check_chain(*zig).failed.empty());
    CHECK(! detect_stabilization(*zig).has_value());
    auto zag = zigzag_step(*zig, Side::F, t2(), k2, chain_bounds(2));
    REQUIRE(zag.has_value());
    CHECK(check_chain(*zag).failed.empty());
    auto kappa = detect_stabilization(*zag);
    REQUIRE(kappa.has_value());
    auto g = fuse(*zag, *kappa, t1(), t2(), k2, chain_bounds(2).ec);
    CHECK(*g.G == chain(2, sig_fg()));
    CHECK(models_theory(*g.G, posets_fg()));
    CHECK(fusion_holds(g, t));

    auto starved = chain_bounds(2);
    starved.size_budget = 1;
    CHECK(! zigzag_step(s, Side::E, t1(), k2, starved).has_value());
}

TEST_CASE("fuse rejects a kappa that breaks the diagram")
{
    auto t = toy(antichain(2));
    auto k2 = ModelClass::bounded(posets(), 2);
    auto s = *zigzag_step(start(t), Side::E, t1(), k2, chain_bounds(2));
    s = *zigzag_step(s, Side::F, t2(), k2, chain_bounds(2));
    auto kappa = detect_stabilization(s);
    REQUIRE(kappa.has_value());
    CHECK(fusion_holds(fuse(s, *kappa, t1(), t2(), k2, chain_bounds(2).ec), t));
    auto swapped = *kappa;
    std::swap(swapped.map[0], swapped.map[1]);
    // Still an order isomorphism of the antichain, but not the one the chain built.
    CHECK(verify_embedding(swapped));
    CHECK(error_code_of([&] { fuse(s, swapped, t1(), t2(), k2, chain_bounds(2).ec); })
        == ErrorCode::VerificationFailure);
    auto collapsed = *kappa;
    collapsed.map = {0, 0};
    CHECK(error_code_of([&] { fuse(s, collapsed, t1(), t2(), k2, chain_bounds(2).ec); })
        == ErrorCode::VerificationFailure);
}

TEST_CASE("check_chain sees a corrupted connecting map")
{
    auto t = toy(antichain(2));
    auto k2 = ModelClass::bounded(posets(), 2);
    auto s = *zigzag_step(start(t), Side::E, t1(), k2, chain_bounds(2));
    REQUIRE(check_chain(s).failed.empty());
    CHECK(! check_chain(s).verified.empty());
    auto broken = s;
    REQUIRE(broken.steps.back().cross.has_value());
    std::swap(broken.steps.back().cross->map[0], broken.steps.back().cross->map[1]);
    CHECK(! check_chain(broken).failed.empty());
}

TEST_CASE("stabilization needs two paired bijective cross maps")
{
    // E starts as a point, F as a 2-chain: the first cross map F -> E cannot be onto E's tip
    // until E has grown.
    auto d0 = sp(chain(1));
    auto e = sp(chain(1, sig_f()));
    auto f = sp(chain(2, sig_g()));
    auto s = start_chain(d0, e, f, make_morphism(d0, e, {0}, leq_sig()), make_morphism(d0, f, {0}, leq_sig()),
        t1(), t2());
    auto k3 = ModelClass::bounded(posets(), 3);
    auto b = chain_bounds(3);
    auto zig = zigzag_step(s, Side::E, t1(), k3, b);
    REQUIRE(zig.has_value());
    CHECK(! detect_stabilization(*zig).has_value());
    CHECK(check_chain(*zig).failed.empty());
}

TEST_CASE("lemma21 end to end")
{
    auto t = toy(chain(1));
    auto k2 = ModelClass::bounded(posets(), 2);
    auto r = run(t, k2, chain_bounds(2));
    REQUIRE(r.fusion.has_value());
    CHECK(fusion_holds(*r.fusion, t));
    CHECK(r.fusion->G->size() == 2);
    // Posets of size at most 2 cannot amalgamate two 2-chains over a point.
    CHECK(r.fusion->ap_tainted);
    for (auto & step : r.fusion->trace.steps)
        CHECK(! step.verified.empty());
    CHECK(check_chain(r.fusion->trace).failed.empty());

    auto zero = chain_bounds(2);
    zero.max_rounds = 0;
    auto none = run(t, k2, zero);
    CHECK(! none.fusion.has_value());
    CHECK(! none.none_reason.empty());

    auto starved = chain_bounds(2);
    starved.size_budget = 1;
    auto k1 = ModelClass::bounded(posets(), 1);
    auto starved_run = run(toy(chain(2)), k2, starved);
    CHECK(! starved_run.fusion.has_value());
    CHECK(! starved_run.none_reason.empty());
    CHECK(error_code_of([&] { run(toy(chain(2)), k1, chain_bounds(1)); }).has_value());
}

TEST_CASE("lemma21 hypotheses")
{
    auto t = toy(chain(1));
    auto k2 = ModelClass::bounded(posets(), 2);
    auto ea = make_theory("ea", sig_f(), {"exists x. forall y. leq(x,y)"});
    CHECK(error_code_of([&] { lemma21(t.d0, t.e, t.f, t.iota0, t.eta0, ea, t2(), k2, chain_bounds(2)); })
        == ErrorCode::HypothesisFailure);
    auto two = toy(chain(2));
    auto collapsing = make_morphism(two.d0, two.e, {0, 0}, leq_sig());
    CHECK(error_code_of([&] {
        lemma21(two.d0, two.e, two.f, collapsing, two.eta0, t1(), t2(), k2, chain_bounds(2));
    }) == ErrorCode::HypothesisFailure);
    auto not_model = sp(poset(2, {}, sig_f()));
    auto nm = *not_model;
    nm.set_function("f", std::vector<int>{0}, 1);
    nm.set_relation("leq", std::vector<int>{0, 1});
    nm.set_function("f", std::vector<int>{1}, 0);
    auto e_bad = sp(nm);
    auto d2 = sp(chain(2));
    CHECK(error_code_of([&] {
        lemma21(d2, e_bad, two.f, make_morphism(d2, e_bad, {0, 1}, leq_sig()), two.eta0, t1(), t2(), k2,
            chain_bounds(2));
    }) == ErrorCode::HypothesisFailure);
}

TEST_CASE("theorem31")
{
    auto k2 = ModelClass::bounded(posets(), 2);
    auto point = sp(chain(1, sig_fg()));
    auto r = theorem31(point, t1(), t2(), k2, chain_bounds(2));
    REQUIRE(r.fusion.has_value());
    REQUIRE(r.embedding.has_value());
    CHECK(verify_embedding(*r.embedding));
    CHECK(models_theory(*r.fusion->G, posets_fg()));

    auto c2 = sp(chain(2, sig_fg()));
    auto r2 = theorem31(c2, t1(), t2(), k2, chain_bounds(2));
    REQUIRE(r2.embedding.has_value());
    CHECK(*r2.fusion->G == *c2);
    CHECK(r2.embedding->map == std::vector<int>{0, 1});
    CHECK(r2.fusion->ec_flag.status == EcStatus::Verified);

    auto zero = chain_bounds(2);
    zero.max_rounds = 0;
    auto none = theorem31(c2, t1(), t2(), k2, zero);
    CHECK(! none.fusion.has_value());
    CHECK(! none.none_reason.empty());
}

TEST_CASE("theorem31 over every small model")
{
    auto k2 = ModelClass::bounded(posets(), 2);
    auto models = iterate(ModelClass::bounded(posets_fg(), 2), 2);
    CHECK(models.size() > 4);
    for (auto & c : models) {
        auto r = theorem31(c, t1(), t2(), k2, chain_bounds(2));
        REQUIRE(r.embedding.has_value());
        CHECK(oracle::is_embedding(*c, *r.fusion->G, r.embedding->map, sig_fg()));
        CHECK(oracle::satisfies(*r.fusion->G, posets_fg()));
        // Larger bounds do not turn the success into a failure.
        auto wider = chain_bounds(2);
        wider.max_rounds = 12;
        wider.size_budget = 8;
        CHECK(theorem31(c, t1(), t2(), k2, wider).embedding.has_value());
    }
}

TEST_CASE("theorem34 agrees with the direct construction")
{
    auto k = ModelClass::bounded(posets(), 3);
    WitnessSearch w{.pushout_first = true, .closure = "leq"};
    auto q = bottom_chains(sig_fg());
    auto r = theorem34(q, t1(), t2(), k, chain_bounds(3), w);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->D->size() == 3);
    CHECK(certificate_failure(q, *r.certificate).empty());
    CHECK(oracle::satisfies(*r.certificate->D, posets_fg()));
    auto direct = prop41c_amalgam(q, t1(), t2(), "leq");
    REQUIRE(direct.certificate.has_value());
    CHECK(isomorphic(*direct.certificate->D, *r.certificate->D));

    auto c2 = sp(chain(2, sig_fg()));
    auto same = make_quintuple(c2, c2, c2, {0, 1}, {0, 1});
    // Over posets of size at most 2 the 2-chain is already e.c., so nothing grows.
    auto rs = theorem34(same, t1(), t2(), ModelClass::bounded(posets(), 2), chain_bounds(2), w);
    REQUIRE(rs.certificate.has_value());
    CHECK(isomorphic(*rs.certificate->D, *c2));

    WitnessSearch starved{.max_d0 = 1, .max_e = 1, .max_f = 1};
    auto none = theorem34(q, t1(), t2(), k, chain_bounds(3), starved);
    CHECK(! none.certificate.has_value());
    CHECK(none.none_phase == "witness");

    auto loose = make_theory("rel-f", sig_f(), {});
    CHECK(error_code_of([&] {
        theorem34(bottom_chains(sig_fg()), loose, t2(), k, chain_bounds(3), w);
    }) != ErrorCode::VerificationFailure);
}

TEST_CASE("theorem34 and prop41c certificates both re-verify on every small quintuple")
{
    auto k = ModelClass::bounded(posets(), 3);
    WitnessSearch w{.pushout_first = true, .closure = "leq"};
    int both = 0;
    for (auto & q : enumerate_quintuples(ModelClass::bounded(posets_fg(), 2), 2)) {
        auto a = theorem34(q, t1(), t2(), k, chain_bounds(3), w);
        auto b = prop41c_amalgam(q, t1(), t2(), "leq");
        if (a.certificate)
            CHECK(certificate_failure(q, *a.certificate).empty());
        if (b.certificate)
            CHECK(certificate_failure(q, *b.certificate).empty());
        both += a.certificate && b.certificate;
    }
    CHECK(both > 0);
}
