#include "../support/fixtures.hh"
#include "../support/oracles.hh"

#include <doctest.h>

using namespace amalg;
using namespace fixtures;

TEST_CASE("signature intersection and union")
{
    Signature a({{"R", 2}}, {{"f", 1}}, {});
    Signature b({{"R", 2}}, {{"g", 1}}, {});
    CHECK(sig_intersect(a, b) == Signature({{"R", 2}}, {}, {}));
    CHECK(sig_intersect(a, a) == a);
    CHECK(sig_union(a, b) == Signature({{"R", 2}}, {{"f", 1}, {"g", 1}}, {}));
    CHECK(sig_union(a, Signature()) == a);
    Signature r3({{"R", 3}}, {}, {});
    CHECK(error_code_of([&] { sig_intersect(Signature({{"R", 2}}, {}, {}), r3); }) == ErrorCode::SymbolClash);
    CHECK(error_code_of([&] { sig_union(Signature({{"R", 2}}, {}, {}), r3); }) == ErrorCode::SymbolClash);
    CHECK(error_code_of([&] { sig_union(Signature({{"f", 1}}, {}, {}), Signature({}, {{"f", 1}}, {})); })
        == ErrorCode::SymbolClash);
    CHECK(sig_difference(sig_union(a, b), a) == Signature({}, {{"g", 1}}, {}));
}

TEST_CASE("signature validation")
{
    CHECK(error_code_of([] { Signature({{"R", 0}}, {}, {}); }).has_value());
    CHECK(error_code_of([] { Signature({{"R", 1}}, {{"R", 1}}, {}); }).has_value());
    CHECK(error_code_of([] { Signature({{"c3", 1}}, {}, {}); }).has_value());
    CHECK(! error_code_of([] { Signature({{"leq", 2}}, {{"f", 1}}, {"zero"}); }).has_value());
}

TEST_CASE("reduct and expand")
{
    auto m = chain(2, sig_f());
    CHECK(reduct(m, leq_sig()) == chain(2));
    CHECK(reduct(m, m.signature()) == m);
    auto bare = reduct(m, Signature());
    CHECK(bare.size() == 2);
    CHECK(bare.signature().empty());
    CHECK(error_code_of([&] { reduct(chain(2), sig_f()); }) == ErrorCode::NotSubsignature);

    Interpretations id;
    id.functions["f"] = {0, 1};
    auto e = expand(antichain(2), Signature({}, {{"f", 1}}, {}), id);
    CHECK(e == antichain(2, sig_f()));
    CHECK(expand(chain(2), Signature(), {}) == chain(2));
    Interpretations bad;
    bad.functions["f"] = {0, 5};
    CHECK(error_code_of([&] { expand(chain(2), Signature({}, {{"f", 1}}, {}), bad); }) == ErrorCode::RangeError);
    CHECK(error_code_of([&] { expand(chain(2), leq_sig(), {}); }) == ErrorCode::SymbolClash);
}

TEST_CASE("reduct undoes expand on every unary function of a 3-element poset")
{
    Signature delta({{"P", 1}}, {{"h", 1}}, {});
    for (auto & table : oracle::all_tuples(3, 3)) {
        Interpretations x;
        x.functions["h"] = table;
        x.relations["P"] = {{table[0]}};
        auto m = expand(chain(3), delta, x);
        CHECK(reduct(m, leq_sig()) == chain(3));
        CHECK(m.apply("h", std::vector<int>{2}) == table[2]);
    }
}

TEST_CASE("transport")
{
    Signature g({}, {{"g", 1}}, {});
    auto point_f = chain(1, sig_f());
    auto point_g = chain(1, sig_g());
    auto t = transport(point_f, g, point_g, std::vector<int>{0});
    CHECK(t == chain(1, sig_fg()));
    CHECK(transport(point_f, Signature(), point_g, std::vector<int>{0}) == point_f);

    // g = constant 0 on two points, carried along the swap: becomes constant 1.
    auto src = antichain(2, sig_g());
    src.set_function("g", std::vector<int>{1}, 0);
    auto moved = transport(antichain(2, sig_f()), g, src, std::vector<int>{1, 0});
    for (int x = 0; x < 2; ++x) {
        int oracle_value = 1 - src.apply("g", std::vector<int>{1 - x});
        CHECK(moved.apply("g", std::vector<int>{x}) == oracle_value);
    }
    CHECK(oracle::is_embedding(reduct(src, g), reduct(moved, g), {1, 0}, g));
    CHECK(error_code_of([&] { transport(antichain(2, sig_f()), g, src, std::vector<int>{0, 0}); })
        == ErrorCode::NotBijective);
}

TEST_CASE("atomic diagram")
{
    auto d = atomic_diagram(chain(2), leq_sig(), {0, 1});
    std::set<std::string> got;
    for (auto & lit : d)
        got.insert(to_string(lit));
    CHECK(got == std::set<std::string>{"leq(0,0)", "leq(0,1)", "leq(1,1)", "!leq(1,0)", "!0=1"});
    CHECK(atomic_diagram(chain(2), leq_sig(), {}).empty());
    auto p = atomic_diagram(chain(1, sig_f()), sig_f(), {0});
    std::set<std::string> point;
    for (auto & lit : p)
        point.insert(to_string(lit));
    CHECK(point.count("f(0)=0") == 1);
    CHECK(point.count("leq(0,0)") == 1);
}

TEST_CASE("full diagrams determine structures")
{
    auto all = oracle::all_structures(Signature({{"E", 2}}, {}, {}), 2);
    std::set<int> full{0, 1};
    for (auto & a : all)
        for (auto & b : all)
            CHECK((atomic_diagram(a, a.signature(), full) == atomic_diagram(b, b.signature(), full)) == (a == b));
}

TEST_CASE("canonical forms")
{
    auto down = poset(2, {{1, 0}});
    auto c = canonical_form(down);
    CHECK(c.form == chain(2));
    CHECK(c.perm == std::vector<int>{1, 0});
    CHECK(canonical_form(c.form).form == c.form);
    CHECK(canonical_form(chain(2)).form == canonical_form(down).form);
    CHECK(canonical_form(chain(2)).form != canonical_form(antichain(2)).form);
    CHECK(permuted(down, c.perm) == c.form);
}

TEST_CASE("canonical form is invariant under every relabelling")
{
    // Every structure over {P/1, f/1} of size <= 4, and over {E/2} of size <= 3.
    std::vector<std::pair<Signature, int>> cases{{Signature({{"P", 1}}, {{"f", 1}}, {}), 4},
        {Signature({{"E", 2}}, {}, {}), 3}};
    for (auto & [sig, max] : cases)
        for (int n = 1; n <= max; ++n) {
            auto perms = oracle::permutations(n);
            for (auto & m : oracle::all_structures(sig, n)) {
                auto base = canonical_form(m);
                CHECK(oracle::isomorphic(base.form, m));
                for (auto & p : perms) {
                    auto moved = canonical_form(permuted(m, p));
                    if (moved.form != base.form) {
                        FAIL("canonical form depends on labelling");
                        return;
                    }
                }
            }
        }
}

TEST_CASE("isomorphism agrees with the brute-force oracle")
{
    Signature sig({{"E", 2}}, {}, {});
    auto all = oracle::all_structures(sig, 3);
    for (std::size_t i = 0; i < all.size(); i += 7)
        for (std::size_t j = 0; j < all.size(); j += 5)
            CHECK(isomorphic(all[i], all[j]) == oracle::isomorphic(all[i], all[j]));
}

TEST_CASE("automorphisms")
{
    CHECK(automorphisms(chain(3)).size() == 1);
    CHECK(automorphisms(antichain(3)).size() == 6);
    CHECK(automorphisms(poset(3, {{0, 1}, {0, 2}})).size() == 2);
}

TEST_CASE("structure accessors reject bad input")
{
    FinStructure m(leq_sig(), 2);
    CHECK(error_code_of([&] { m.set_relation("leq", std::vector<int>{0, 2}); }) == ErrorCode::RangeError);
    CHECK(error_code_of([&] { m.set_relation("leq", std::vector<int>{0}); }) == ErrorCode::ArityMismatch);
    CHECK(error_code_of([&] { (void) m.holds("lt", std::vector<int>{0, 1}); }) == ErrorCode::UnknownSymbol);
    CHECK(error_code_of([] { FinStructure(leq_sig(), 0); }) == ErrorCode::RangeError);
}
