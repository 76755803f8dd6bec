#include "../support/fixtures.hh"
#include "../support/oracles.hh"

#include <doctest.h>

using namespace amalg;
using namespace fixtures;

namespace {

using Map = std::vector<int>;

auto bounded(const Theory & t, int n) -> ModelClass { return ModelClass::bounded(t, n); }

// {c < a} and {c < b} glued at c.
auto vee() -> Quintuple { return bottom_chains(); }

// {a < c} and {c < b} glued at c.
auto zigzag() -> Quintuple { return make_quintuple(sp(chain(2)), sp(chain(2)), sp(chain(1)), {1}, {0}); }

auto oracle_automorphisms(const FinStructure & m) -> std::vector<Map>
{
    std::vector<Map> out;
    for (auto & p : oracle::permutations(m.size()))
        if (oracle::is_embedding(m, m, p, m.signature()))
            out.push_back(p);
    return out;
}

// Quintuples counted up to isomorphism by explicit orbit marking.
auto oracle_quintuple_count(const Theory & t, int bound) -> std::size_t
{
    std::vector<FinStructure> ms;
    for (int n = 1; n <= bound; ++n)
        for (auto & m : oracle::models(t, n))
            ms.push_back(m);
    std::size_t count = 0;
    for (auto & C : ms)
        for (auto & A : ms)
            for (auto & B : ms) {
                auto as = oracle::embeddings(C, A, t.sig);
                auto bs = oracle::embeddings(C, B, t.sig);
                auto ac = oracle_automorphisms(C), aa = oracle_automorphisms(A), ab = oracle_automorphisms(B);
                std::set<std::pair<Map, Map>> seen;
                for (auto & a : as)
                    for (auto & b : bs) {
                        if (seen.count({a, b}))
                            continue;
                        ++count;
                        for (auto & p : ac)
                            for (auto & s : aa)
                                for (auto & r : ab) {
                                    Map a2(a.size()), b2(b.size());
                                    for (std::size_t c = 0; c < a.size(); ++c) {
                                        a2[c] = s[static_cast<std::size_t>(a[static_cast<std::size_t>(p[c])])];
                                        b2[c] = r[static_cast<std::size_t>(b[static_cast<std::size_t>(p[c])])];
                                    }
                                    seen.insert({a2, b2});
                                }
                    }
            }
    return count;
}

// Any D of size <= max_d among the models, with embeddings making the square commute.
auto brute_force_amalgam(const Quintuple & q, const Theory & t, int max_d, bool strong) -> bool
{
    for (int n = 1; n <= max_d; ++n)
        for (auto & D : oracle::models(t, n))
            for (auto & i : oracle::embeddings(*q.A, D, t.sig))
                for (auto & e : oracle::embeddings(*q.B, D, t.sig)) {
                    bool commutes = true;
                    for (int c = 0; c < q.C->size(); ++c)
                        commutes = commutes
                            && i[static_cast<std::size_t>(q.alpha.map[static_cast<std::size_t>(c)])]
                                == e[static_cast<std::size_t>(q.beta.map[static_cast<std::size_t>(c)])];
                    if (! commutes)
                        continue;
                    if (! strong)
                        return true;
                    std::set<int> ia(i.begin(), i.end()), both;
                    for (int x : e)
                        if (ia.count(x))
                            both.insert(x);
                    if (static_cast<int>(both.size()) == q.C->size())
                        return true;
                }
    return false;
}

auto is_hom(const FinStructure & a, const FinStructure & b, const Map & m) -> bool
{
    for (auto & t : a.tuples("leq"))
        if (! b.holds("leq", std::vector<int>{m[static_cast<std::size_t>(t[0])], m[static_cast<std::size_t>(t[1])]}))
            return false;
    return true;
}

auto graph(int n, const std::vector<std::pair<int, int>> & edges, const Signature & sig) -> FinStructure
{
    FinStructure g(sig, n);
    for (auto [a, b] : edges) {
        g.set_relation("edge", std::vector<int>{a, b});
        g.set_relation("edge", std::vector<int>{b, a});
    }
    return g;
}

} // namespace

TEST_CASE("quintuples validate their maps")
{
    CHECK(error_code_of([] { make_quintuple(sp(antichain(2)), sp(chain(2)), sp(antichain(2)), {0, 1}, {0, 1}); })
        == ErrorCode::InputError);
    CHECK(error_code_of([] { make_quintuple(sp(chain(2)), sp(chain(2, sig_f())), sp(chain(1)), {0}, {0}); })
        == ErrorCode::SignatureMismatch);
}

TEST_CASE("find_amalgam examples")
{
    auto lin = bounded(linear_orders(), 3);
    AmalgamSearch strong;
    strong.require_strong = true;
    auto c = find_amalgam(vee(), lin, lin, 3, strong);
    REQUIRE(c.has_value());
    CHECK(isomorphic(*c->D, chain(3)));
    CHECK(c->strong);
    CHECK(c->iota.map == std::vector<int>{0, 1});
    CHECK(c->eta.map == std::vector<int>{0, 2});
    CHECK(verify_certificate(vee(), *c));
    CHECK(! find_amalgam(vee(), lin, lin, 2, strong).has_value());
    // The plain search is content to identify the two tops.
    auto plain = find_amalgam(vee(), lin, lin, 2);
    REQUIRE(plain.has_value());
    CHECK(! plain->strong);
    auto point = make_quintuple(sp(chain(1)), sp(chain(1)), sp(chain(1)), {0}, {0});
    auto p = find_amalgam(point, lin, lin, 1);
    REQUIRE(p.has_value());
    CHECK(p->D->size() == 1);
    CHECK(p->strong);
    CHECK(error_code_of([&] { find_amalgam(vee(), bounded(linear_orders(), 1), lin, 3); })
        == ErrorCode::MembershipError);
    // Without strength the first amalgam collapses the tops; strength forces three points.
    auto posets3 = bounded(posets(), 3);
    CHECK(find_amalgam(vee(), posets3, posets3, 3)->D->size() == 2);
    auto s = find_amalgam(vee(), posets3, posets3, 3, strong);
    REQUIRE(s.has_value());
    CHECK(s->strong);
    CHECK(s->D->size() == 3);
}

TEST_CASE("find_amalgam is complete and sound up to its bounds")
{
    for (auto & t : {posets(), linear_orders()}) {
        auto k = bounded(t, 3);
        for (auto & q : enumerate_quintuples(k, 2))
            for (bool strong : {false, true}) {
                AmalgamSearch s;
                s.require_strong = strong;
                auto c = find_amalgam(q, k, k, 3, s);
                CHECK(c.has_value() == brute_force_amalgam(q, t, 3, strong));
                if (c) {
                    CHECK(oracle::is_embedding(*q.A, *c->D, c->iota.map, t.sig));
                    CHECK(oracle::is_embedding(*q.B, *c->D, c->eta.map, t.sig));
                    CHECK(oracle::satisfies(*c->D, t));
                    CHECK(certificate_failure(q, *c).empty());
                }
            }
    }
}

TEST_CASE("quintuple enumeration counts orbits")
{
    CHECK(enumerate_quintuples(bounded(posets(), 3), 2).size() == oracle_quintuple_count(posets(), 2));
    CHECK(enumerate_quintuples(bounded(posets(), 3), 3).size() == oracle_quintuple_count(posets(), 3));
    CHECK(enumerate_quintuples(bounded(graphs(), 3), 3).size() == oracle_quintuple_count(graphs(), 3));
    CHECK(enumerate_quintuples(bounded(sets(), 3), 3).size() == oracle_quintuple_count(sets(), 3));
    auto one = enumerate_quintuples(bounded(posets(), 3), 3);
    auto four = enumerate_quintuples(bounded(posets(), 3), 3, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(*one[i].A == *four[i].A);
        CHECK(*one[i].B == *four[i].B);
        CHECK(one[i].alpha.map == four[i].alpha.map);
        CHECK(one[i].beta.map == four[i].beta.map);
    }
}

TEST_CASE("check_ap examples")
{
    ApOptions first;
    first.pushout_first = true;
    first.closure = "leq";
    auto posets5 = check_ap(bounded(posets(), 5), 2, 5, first);
    CHECK(posets5.status == ApStatus::Holds);
    for (auto & inst : posets5.instances)
        CHECK(verify_certificate(inst.q, *inst.certificate));
    CHECK(check_ap(bounded(posets(), 4), 2, 4).status == ApStatus::Holds);

    auto lin = check_ap(bounded(linear_orders(), 2), 2, 2);
    CHECK(lin.status == ApStatus::FailsAt);
    REQUIRE(lin.counterexample.has_value());
    CHECK(lin.counterexample->C->size() == 1);
    CHECK(! brute_force_amalgam(*lin.counterexample, linear_orders(), 2, false));
    // Not exhaustive: the class allows size 3, the search stopped at 2.
    CHECK(check_ap(bounded(linear_orders(), 3), 2, 2).status == ApStatus::Unknown);
    CHECK(check_ap(bounded(linear_orders(), 3), 2, 3).status == ApStatus::Holds);

    auto point = ModelClass::explicit_list(leq_sig(), {chain(1)});
    CHECK(check_ap(point, 1, 1).status == ApStatus::Holds);
}

TEST_CASE("is_strong")
{
    auto q = vee();
    auto c3 = sp(chain(3));
    CHECK(is_strong(make_certificate(q, c3, {0, 1}, {0, 2}), q));
    auto collapse = make_certificate(q, sp(chain(2)), {0, 1}, {0, 1});
    CHECK(verify_certificate(q, collapse));
    CHECK(! is_strong(collapse, q));
    auto point = make_quintuple(sp(chain(1)), sp(chain(1)), sp(chain(1)), {0}, {0});
    CHECK(is_strong(make_certificate(point, sp(chain(1)), {0}, {0}), point));
    CHECK(error_code_of([&] { is_strong(make_certificate(q, c3, {0, 1}, {1, 2}), q); })
        == ErrorCode::InvalidCertificate);
}

TEST_CASE("certificate re-verification catches every corruption")
{
    auto q = vee();
    auto good = make_certificate(q, sp(chain(3)), {0, 1}, {0, 2});
    CHECK(certificate_failure(q, good).empty());
    auto bad_square = make_certificate(q, sp(chain(3)), {0, 1}, {1, 2});
    CHECK(! certificate_failure(q, bad_square).empty());
    auto not_emb = make_certificate(q, sp(chain(3)), {1, 0}, {1, 2});
    CHECK(! certificate_failure(q, not_emb).empty());
    auto lying = good;
    lying.strong = false;
    CHECK(! certificate_failure(q, lying).empty());
}

TEST_CASE("superamalgamation")
{
    auto q = vee();
    auto po = pushout_relational(q, "leq").pushout;
    REQUIRE(po.has_value());
    auto cert = make_certificate(q, po->D, po->iota.map, po->eta.map);
    CHECK(check_superamalgamation(cert, q, "leq"));
    CHECK(! check_superamalgamation(make_certificate(q, sp(chain(3)), {0, 1}, {0, 2}), q, "leq"));
    auto point = make_quintuple(sp(chain(1)), sp(chain(1)), sp(chain(1)), {0}, {0});
    CHECK(check_superamalgamation(make_certificate(point, sp(chain(1)), {0}, {0}), point, "leq"));
    CHECK(error_code_of([&] { check_superamalgamation(cert, q, "lt"); }) == ErrorCode::UnknownSymbol);
    // The zigzag pushout is a 3-chain whose a < b is interpolated by c.
    auto z = zigzag();
    auto zp = pushout_relational(z, "leq").pushout;
    CHECK(check_superamalgamation(make_certificate(z, zp->D, zp->iota.map, zp->eta.map), z, "leq"));
}

TEST_CASE("pushout_empty")
{
    auto q = vee();
    auto p = pushout_empty(q);
    CHECK(p.D->size() == 3);
    CHECK(p.D->signature().empty());
    CHECK(compose(q.alpha, p.iota).map == compose(q.beta, p.eta).map);
    auto same = make_quintuple(sp(chain(2)), sp(chain(2)), sp(chain(2)), {0, 1}, {0, 1});
    auto ps = pushout_empty(same);
    CHECK(ps.D->size() == 2);
    CHECK(ps.iota.map == ps.eta.map);
}

TEST_CASE("pushout_relational examples")
{
    auto v = pushout_relational(vee(), "leq");
    REQUIRE(v.pushout.has_value());
    auto & D = *v.pushout->D;
    CHECK(D.size() == 3);
    CHECK(isomorphic(D, poset(3, {{0, 1}, {0, 2}})));
    CHECK(verify_embedding(v.pushout->iota));
    CHECK(verify_embedding(v.pushout->eta));

    auto z = pushout_relational(zigzag(), "leq");
    REQUIRE(z.pushout.has_value());
    CHECK(isomorphic(*z.pushout->D, chain(3)));
    CHECK(models_theory(*z.pushout->D, posets()));
    // Without closure the union is not transitive.
    auto open = pushout_relational(zigzag(), std::nullopt);
    REQUIRE(open.pushout.has_value());
    CHECK(! models_theory(*open.pushout->D, posets()));

    CHECK(error_code_of([] { pushout_relational(bottom_chains(sig_f()), std::nullopt); }) == ErrorCode::NotRelational);
    CHECK(error_code_of([] { pushout_relational(vee(), "lt"); }) == ErrorCode::UnknownSymbol);
}

TEST_CASE("closure failures")
{
    Signature e({{"E", 2}}, {}, {});
    // A is a non-transitive path 0 -> 1 -> 2 over C = {1 -> 2}: closing adds 0 -> 2 inside A.
    FinStructure path(e, 3);
    path.set_relation("E", std::vector<int>{0, 1});
    path.set_relation("E", std::vector<int>{1, 2});
    FinStructure edge(e, 2);
    edge.set_relation("E", std::vector<int>{0, 1});
    auto q = make_quintuple(sp(path), sp(edge), sp(edge), {1, 2}, {0, 1});
    CHECK(pushout_relational(q, std::nullopt).pushout.has_value());
    auto closed = pushout_relational(q, "E");
    CHECK(! closed.pushout.has_value());
    CHECK(closed.closure_failure.find("reflect") != std::string::npos);

    // A cycle through two glued points breaks antisymmetry.
    FinStructure cyc(e, 3);
    cyc.set_relation("E", std::vector<int>{0, 1});
    cyc.set_relation("E", std::vector<int>{1, 2});
    cyc.set_relation("E", std::vector<int>{2, 0});
    auto qc = make_quintuple(sp(cyc), sp(edge), sp(edge), {0, 1}, {0, 1});
    auto cc = pushout_relational(qc, "E");
    CHECK(! cc.pushout.has_value());
    CHECK(cc.closure_failure.find("identifies") != std::string::npos);
}

TEST_CASE("the poset pushout is universal for order-preserving maps")
{
    std::vector<FinStructure> targets;
    for (int n = 1; n <= 3; ++n)
        for (auto & m : oracle::models(posets(), n))
            targets.push_back(m);
    int checked = 0;
    for (auto & q : enumerate_quintuples(bounded(posets(), 3), 2)) {
        auto v = pushout_relational(q, "leq");
        REQUIRE(v.pushout.has_value());
        auto & P = *v.pushout;
        for (auto & X : targets)
            for (auto & f : oracle::all_tuples(X.size(), q.A->size())) {
                if (! is_hom(*q.A, X, f))
                    continue;
                for (auto & g : oracle::all_tuples(X.size(), q.B->size())) {
                    if (! is_hom(*q.B, X, g))
                        continue;
                    bool agree = true;
                    for (int c = 0; c < q.C->size(); ++c)
                        agree = agree
                            && f[static_cast<std::size_t>(q.alpha.map[static_cast<std::size_t>(c)])]
                                == g[static_cast<std::size_t>(q.beta.map[static_cast<std::size_t>(c)])];
                    if (! agree)
                        continue;
                    int mediators = 0;
                    for (auto & u : oracle::all_tuples(X.size(), P.D->size())) {
                        if (! is_hom(*P.D, X, u))
                            continue;
                        bool commutes = true;
                        for (int a = 0; a < q.A->size(); ++a)
                            commutes = commutes
                                && u[static_cast<std::size_t>(P.iota.map[static_cast<std::size_t>(a)])]
                                    == f[static_cast<std::size_t>(a)];
                        for (int b = 0; b < q.B->size(); ++b)
                            commutes = commutes
                                && u[static_cast<std::size_t>(P.eta.map[static_cast<std::size_t>(b)])]
                                    == g[static_cast<std::size_t>(b)];
                        mediators += commutes;
                    }
                    CHECK(mediators == 1);
                    ++checked;
                }
            }
    }
    CHECK(checked > 100);
}

TEST_CASE("check_ap_over_pushouts examples")
{
    auto sets3 = bounded(sets(), 3);
    CHECK(check_ap_over_pushouts(bounded(sets(), 4), sets3, std::nullopt, 2, 4).status == ApStatus::Holds);
    auto p3 = bounded(posets(), 3);
    CHECK(check_ap_over_pushouts(p3, p3, "leq", 2, 3).status == ApStatus::Holds);
    auto lin = check_ap_over_pushouts(bounded(linear_orders(), 4), bounded(posets(), 4), "leq", 2, 4);
    CHECK(lin.status == ApStatus::FailsAt);
    for (auto & inst : lin.instances)
        if (inst.certificate) {
            REQUIRE(inst.mediator.has_value());
            CHECK(verify_embedding(*inst.mediator));
        }
}

TEST_CASE("amalgamation over empty pushouts is strong amalgamation")
{
    auto unary = make_theory("unary", Signature({{"P", 1}}, {}, {}), {});
    auto fun = make_theory("fun", Signature({}, {{"f", 1}}, {}), {});
    auto idem = make_theory("idem", Signature({}, {{"f", 1}}, {}), {"forall x. f(f(x)) = f(x)"});
    auto pointed = make_theory("pointed", Signature({{"P", 1}}, {}, {}), {"exists x. forall y. P(y) -> x = y"});
    auto k0 = bounded(sets(), 4);
    for (auto & t : {sets(), unary, fun, idem, pointed}) {
        auto k = bounded(t, 3);
        auto over = check_ap_over_pushouts(k, k0, std::nullopt, 2, 3);
        ApOptions strong;
        strong.require_strong = true;
        auto direct = check_ap(k, 2, 3, strong);
        INFO(t.name);
        CHECK(over.status == direct.status);
        REQUIRE(over.instances.size() == direct.instances.size());
        for (std::size_t i = 0; i < over.instances.size(); ++i)
            CHECK(over.instances[i].certificate.has_value() == direct.instances[i].certificate.has_value());
    }
}

TEST_CASE("witness search")
{
    auto q = bottom_chains(sig_fg());
    auto k0 = bounded(posets(), 3);
    auto t1 = posets_with("f");
    auto t2 = posets_with("g");
    auto w = find_subcompatible_witness(q, k0, t1, t2);
    REQUIRE(w.has_value());
    CHECK(witness_failure(q, *w, t1, t2, &k0).empty());
    WitnessSearch first;
    first.pushout_first = true;
    first.closure = "leq";
    auto wp = find_subcompatible_witness(q, k0, t1, t2, first);
    REQUIRE(wp.has_value());
    CHECK(isomorphic(*wp->D0, poset(3, {{0, 1}, {0, 2}})));
    CHECK(witness_failure(q, *wp, t1, t2, &k0).empty());
    WitnessSearch tiny{.max_d0 = 1, .max_e = 1, .max_f = 1};
    CHECK(! find_subcompatible_witness(q, k0, t1, t2, tiny).has_value());

    // When the union theory amalgamates the quintuple directly, reducts of that amalgam are a witness.
    auto fg = ModelClass::bounded(posets_fg(), 3);
    auto d = find_amalgam(q, fg, fg, 3);
    REQUIRE(d.has_value());
    auto l0 = leq_sig();
    auto D0 = sp(reduct(*d->D, l0));
    SubcompatibleWitness direct{D0, sp(reduct(*d->D, t1.sig)), sp(reduct(*d->D, t2.sig)),
        Morphism{q.A, D0, d->iota.map, l0}, Morphism{q.B, D0, d->eta.map, l0}, identity(D0, l0), identity(D0, l0)};
    direct.iota0.cod = direct.E;
    direct.eta0.cod = direct.F;
    CHECK(witness_failure(q, direct, t1, t2, &k0).empty());
}

TEST_CASE("witness conditions are each enforced")
{
    auto q = bottom_chains(sig_fg());
    auto k0 = bounded(posets(), 3);
    auto t1 = posets_with("f");
    auto t2 = posets_with("g");
    WitnessSearch first{.pushout_first = true, .closure = "leq"};
    auto w = *find_subcompatible_witness(q, k0, t1, t2, first);
    auto square = w;
    square.beta1.map = {0, 0};
    CHECK(! witness_failure(q, square, t1, t2).empty());
    auto reversed = w;
    std::swap(reversed.alpha1.map[0], reversed.alpha1.map[1]);
    CHECK(! witness_failure(q, reversed, t1, t2).empty());
    auto e_flip = w;
    auto E = *w.E;
    E.set_function("f", std::vector<int>{w.iota0.map[static_cast<std::size_t>(w.alpha1.map[1])]},
        w.iota0.map[static_cast<std::size_t>(w.alpha1.map[0])]);
    e_flip.E = sp(E);
    e_flip.iota0.cod = e_flip.E;
    CHECK(! witness_failure(q, e_flip, t1, t2).empty());
    auto small = ModelClass::bounded(posets(), 2);
    CHECK(! witness_failure(q, w, t1, t2, &small).empty());
}

TEST_CASE("prop41a builds a verified amalgam of the union theory")
{
    auto q = bottom_chains(sig_fg());
    auto t1 = posets_with("f");
    auto t2 = posets_with("g");
    auto k0 = bounded(posets(), 3);
    WitnessSearch first{.pushout_first = true, .closure = "leq"};
    auto w = find_subcompatible_witness(q, k0, t1, t2, first);
    REQUIRE(w.has_value());
    auto c = prop41a_amalgam(q, *w, t1, t2);
    CHECK(c.D->size() == 3);
    CHECK(certificate_failure(q, c).empty());
    CHECK(models_theory(*c.D, t1));
    CHECK(models_theory(*c.D, t2));
    CHECK(oracle::satisfies(*c.D, posets_fg()));
    for (int x = 0; x < 3; ++x) {
        CHECK(c.D->apply("f", std::vector<int>{x}) == x);
        CHECK(c.D->apply("g", std::vector<int>{x}) == x);
    }

    auto point = make_quintuple(sp(chain(1, sig_fg())), sp(chain(1, sig_fg())), sp(chain(1, sig_fg())), {0}, {0});
    auto wpt = find_subcompatible_witness(point, k0, t1, t2);
    REQUIRE(wpt.has_value());
    CHECK(prop41a_amalgam(point, *wpt, t1, t2).D->size() == 1);

    // eta0 remapped by a non-embedding permutation of F.
    auto bad = *w;
    auto F = *w->F;
    std::vector<int> swap(static_cast<std::size_t>(F.size()));
    for (int i = 0; i < F.size(); ++i)
        swap[static_cast<std::size_t>(i)] = i;
    REQUIRE(F.size() >= 2);
    for (int i = 0; i < F.size(); ++i)
        for (int j = 0; j < F.size(); ++j)
            if (F.holds("leq", std::vector<int>{i, j}) && i != j) {
                swap[static_cast<std::size_t>(i)] = j;
                swap[static_cast<std::size_t>(j)] = i;
                i = j = F.size();
            }
    for (auto & x : bad.eta0.map)
        x = swap[static_cast<std::size_t>(x)];
    auto code = error_code_of([&] { prop41a_amalgam(q, bad, t1, t2); });
    CHECK(code == ErrorCode::InducedRelationConflict);

    auto loose = make_theory("loose", sig_f(), {"exists x. leq(x,x)"});
    CHECK(error_code_of([&] { prop41a_amalgam(q, *w, loose, t2); }) == ErrorCode::Inapplicable);
}

TEST_CASE("prop41b expands the base by pulled-back relations")
{
    Signature l1({{"edge", 2}, {"red", 1}}, {}, {});
    Signature l2({{"edge", 2}, {"blue", 1}}, {}, {});
    Signature l({{"edge", 2}, {"red", 1}, {"blue", 1}}, {}, {});
    auto gax = std::vector<std::string>{"forall x. !edge(x,x)", "forall x y. edge(x,y) -> edge(y,x)"};
    auto t1 = make_theory("red-graphs", l1, gax);
    auto t2 = make_theory("blue-graphs", l2, gax);
    auto A = graph(2, {{0, 1}}, l);
    A.set_relation("red", std::vector<int>{1});
    auto B = graph(2, {{0, 1}}, l);
    B.set_relation("blue", std::vector<int>{1});
    auto C = graph(1, {}, l);
    auto q = make_quintuple(sp(A), sp(B), sp(C), {0}, {0});
    auto k0 = bounded(graphs(), 3);
    auto w = find_subcompatible_witness(q, k0, t1, t2);
    REQUIRE(w.has_value());
    auto c = prop41b_amalgam(q, *w, t1, t2);
    CHECK(certificate_failure(q, c).empty());
    CHECK(models_theory(*c.D, t1));
    CHECK(models_theory(*c.D, t2));
    CHECK(c.D->size() == w->D0->size());

    // Red pulled back pointwise: alpha1 reflects it since alpha1 then iota0 is an L1-embedding.
    for (int a = 0; a < 2; ++a)
        CHECK(c.D->holds("red", std::vector<int>{c.iota.map[static_cast<std::size_t>(a)]})
            == A.holds("red", std::vector<int>{a}));

    // Flip red at the image of A's red point: alpha1 then iota0 stops being an L1-embedding.
    auto bad = *w;
    auto E = *w->E;
    int x = w->iota0.map[static_cast<std::size_t>(w->alpha1.map[1])];
    E.set_relation("red", std::vector<int>{x}, false);
    bad.E = sp(E);
    bad.iota0.cod = bad.E;
    CHECK(error_code_of([&] { prop41b_amalgam(q, bad, t1, t2); }) == ErrorCode::InvalidWitness);

    auto fq = bottom_chains(sig_fg());
    auto fw = find_subcompatible_witness(fq, bounded(posets(), 3), posets_with("f"), posets_with("g"));
    REQUIRE(fw.has_value());
    CHECK(error_code_of([&] { prop41b_amalgam(fq, *fw, posets_with("f"), posets_with("g")); })
        == ErrorCode::Inapplicable);
}

TEST_CASE("prop41c extends the pushout by both function clauses")
{
    auto t1 = posets_with("f");
    auto t2 = posets_with("g");
    auto q = bottom_chains(sig_fg());
    auto r = prop41c_amalgam(q, t1, t2, "leq");
    REQUIRE(r.certificate.has_value());
    auto & c = *r.certificate;
    CHECK(isomorphic(reduct(*c.D, leq_sig()), poset(3, {{0, 1}, {0, 2}})));
    CHECK(certificate_failure(q, c).empty());
    CHECK(models_theory(*c.D, t1));
    CHECK(models_theory(*c.D, t2));

    // f sends A's top to its bottom; B keeps f = id.
    auto A = chain(2, sig_fg());
    A.set_function("f", std::vector<int>{1}, 0);
    auto moved = make_quintuple(sp(A), sp(chain(2, sig_fg())), sp(chain(1, sig_fg())), {0}, {0});
    auto rm = prop41c_amalgam(moved, t1, t2, "leq");
    REQUIRE(rm.certificate.has_value());
    auto & cm = *rm.certificate;
    CHECK(certificate_failure(moved, cm).empty());
    CHECK(cm.D->apply("f", std::vector<int>{cm.iota.map[1]}) == cm.iota.map[0]);
    CHECK(cm.D->apply("f", std::vector<int>{cm.eta.map[1]}) == cm.eta.map[1]);
    CHECK(models_theory(*cm.D, t1));

    // A binary extra function.
    Signature bin({{"leq", 2}}, {{"h", 2}}, {});
    auto tb = make_theory("posets-h", bin, poset_axioms());
    auto with_h = [&](FinStructure m) {
        for (int x = 0; x < m.size(); ++x)
            for (int y = 0; y < m.size(); ++y)
                m.set_function("h", std::vector<int>{x, y}, x);
        return m;
    };
    Signature lb({{"leq", 2}}, {{"g", 1}, {"h", 2}}, {});
    auto qb = make_quintuple(sp(with_h(chain(2, lb))), sp(with_h(chain(2, lb))), sp(with_h(chain(1, lb))), {0}, {0});
    CHECK(error_code_of([&] { prop41c_amalgam(qb, tb, t2, "leq"); }) == ErrorCode::Inapplicable);

    // Missing endomorphism axiom.
    auto bare = make_theory("posets-f-bare", sig_f(), poset_axioms());
    CHECK(error_code_of([&] { prop41c_amalgam(q, bare, t2, "leq"); }) == ErrorCode::Inapplicable);
    CHECK(endomorphism_axioms("f", leq_sig()).size() == 1);
}
