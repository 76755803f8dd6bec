#include <amalg/amalgamation.hh>
#include <amalg/detail/parallel.hh>

#include <algorithm>
#include <array>

namespace amalg {

auto make_quintuple(StructurePtr A, StructurePtr B, StructurePtr C, std::vector<int> alpha, std::vector<int> beta)
    -> Quintuple
{
    if (A->signature() != C->signature() || B->signature() != C->signature())
        fail(ErrorCode::SignatureMismatch, "A, B and C must share one signature");
    auto sig = C->signature();
    auto a = make_morphism(C, A, std::move(alpha), sig);
    auto b = make_morphism(C, B, std::move(beta), sig);
    if (auto why = embedding_failure(a); ! why.empty())
        fail(ErrorCode::InputError, "alpha is not an embedding: " + why);
    if (auto why = embedding_failure(b); ! why.empty())
        fail(ErrorCode::InputError, "beta is not an embedding: " + why);
    return Quintuple{std::move(A), std::move(B), std::move(C), std::move(a), std::move(b)};
}

namespace {

auto images_strong(const Quintuple & q, const std::vector<int> & iota, const std::vector<int> & eta, int d_size) -> bool
{
    std::vector<char> in_a(static_cast<std::size_t>(d_size), 0), in_c(static_cast<std::size_t>(d_size), 0);
    for (int v : iota)
        in_a[static_cast<std::size_t>(v)] = 1;
    for (int c : q.alpha.map)
        in_c[static_cast<std::size_t>(iota[static_cast<std::size_t>(c)])] = 1;
    for (int v : eta)
        if (in_a[static_cast<std::size_t>(v)] && ! in_c[static_cast<std::size_t>(v)])
            return false;
    return true;
}

// Problems with c as an amalgam of q, ignoring the strong flag.
auto amalgam_failure(const Quintuple & q, const AmalgamCertificate & c) -> std::string
{
    auto & sig = q.signature();
    if (! sig.is_subsignature_of(c.D->signature()))
        return "D does not interpret the quintuple's signature";
    if (static_cast<int>(c.iota.map.size()) != q.A->size() || static_cast<int>(c.eta.map.size()) != q.B->size())
        return "map lengths do not match A and B";
    for (int v : c.iota.map)
        if (v < 0 || v >= c.D->size())
            return "iota leaves D";
    for (int v : c.eta.map)
        if (v < 0 || v >= c.D->size())
            return "eta leaves D";
    if (auto why = embedding_failure(Morphism{q.A, c.D, c.iota.map, sig}); ! why.empty())
        return "iota is not an embedding: " + why;
    if (auto why = embedding_failure(Morphism{q.B, c.D, c.eta.map, sig}); ! why.empty())
        return "eta is not an embedding: " + why;
    for (int x = 0; x < q.C->size(); ++x) {
        auto i = static_cast<std::size_t>(x);
        if (c.iota.map[static_cast<std::size_t>(q.alpha.map[i])] != c.eta.map[static_cast<std::size_t>(q.beta.map[i])])
            return "square does not commute at c" + std::to_string(x);
    }
    return {};
}

} // namespace

auto make_certificate(const Quintuple & q, StructurePtr D, std::vector<int> iota, std::vector<int> eta)
    -> AmalgamCertificate
{
    auto i = make_morphism(q.A, D, std::move(iota), q.signature());
    auto e = make_morphism(q.B, D, std::move(eta), q.signature());
    bool strong = images_strong(q, i.map, e.map, D->size());
    return AmalgamCertificate{std::move(D), std::move(i), std::move(e), strong};
}

auto certificate_failure(const Quintuple & q, const AmalgamCertificate & c) -> std::string
{
    if (auto why = amalgam_failure(q, c); ! why.empty())
        return why;
    if (c.strong != images_strong(q, c.iota.map, c.eta.map, c.D->size()))
        return "strong flag does not match the images";
    return {};
}

auto verify_certificate(const Quintuple & q, const AmalgamCertificate & c) -> bool
{
    return certificate_failure(q, c).empty();
}

namespace {

auto fixed_for_eta(const Quintuple & q, const std::vector<int> & iota) -> std::vector<int>
{
    std::vector<int> fixed(static_cast<std::size_t>(q.B->size()), -1);
    for (std::size_t c = 0; c < q.alpha.map.size(); ++c)
        fixed[static_cast<std::size_t>(q.beta.map[c])] = iota[static_cast<std::size_t>(q.alpha.map[c])];
    return fixed;
}

auto amalgam_in(const Quintuple & q, const StructurePtr & D, bool require_strong) -> std::optional<AmalgamCertificate>
{
    auto & sig = q.signature();
    for (auto & iota : enumerate_embeddings(q.A, D, sig)) {
        EmbeddingSearch s;
        s.fixed = fixed_for_eta(q, iota.map);
        if (! require_strong)
            s.limit = 1;
        for (auto & eta : enumerate_embeddings(q.B, D, sig, s)) {
            bool strong = images_strong(q, iota.map, eta.map, D->size());
            if (require_strong && ! strong)
                continue;
            return AmalgamCertificate{D, iota, eta, strong};
        }
    }
    return std::nullopt;
}

} // namespace

auto find_amalgam(const Quintuple & q, const ModelClass & k, const ModelClass & h, int max_d,
    const AmalgamSearch & search) -> std::optional<AmalgamCertificate>
{
    for (auto * m : {q.A.get(), q.B.get(), q.C.get()})
        if (! contains(k, *m))
            fail(ErrorCode::MembershipError, "quintuple structure is not in the class");
    auto Ds = iterate(h, max_d, search.workers);
    auto hit = detail::parallel_find_first<AmalgamCertificate>(Ds.size(), search.workers,
        [&](std::size_t i) { return amalgam_in(q, Ds[i], search.require_strong); });
    if (! hit)
        return std::nullopt;
    return std::move(hit->second);
}

namespace {

using Map = std::vector<int>;

auto act(const Map & m, const Map & sigma, const Map & tau) -> Map
{
    Map out(m.size());
    for (std::size_t c = 0; c < m.size(); ++c)
        out[c] = tau[static_cast<std::size_t>(m[static_cast<std::size_t>(sigma[c])])];
    return out;
}

auto orbit_minimal(const Map & a, const Map & b, const std::vector<Map> & aut_c, const std::vector<Map> & aut_a,
    const std::vector<Map> & aut_b) -> bool
{
    auto self = std::pair{a, b};
    for (auto & s : aut_c)
        for (auto & t : aut_a) {
            auto a2 = act(a, s, t);
            if (a2 > a)
                continue;
            for (auto & r : aut_b)
                if (std::pair{a2, act(b, s, r)} < self)
                    return false;
        }
    return true;
}

} // namespace

auto enumerate_quintuples(const ModelClass & k, int bound, int workers) -> std::vector<Quintuple>
{
    auto members = iterate(k, bound, workers);
    std::vector<std::vector<Map>> auts;
    for (auto & m : members)
        auts.push_back(automorphisms(*m));
    auto & sig = k.signature();

    std::size_t n = members.size();
    auto parts = detail::parallel_map<std::vector<Quintuple>>(n * n * n, workers, [&](std::size_t idx) {
        std::size_t ci = idx / (n * n), ai = (idx / n) % n, bi = idx % n;
        auto & C = members[ci];
        auto & A = members[ai];
        auto & B = members[bi];
        std::vector<Quintuple> out;
        if (C->size() > A->size() || C->size() > B->size())
            return out;
        auto into_a = enumerate_embeddings(C, A, sig);
        auto into_b = enumerate_embeddings(C, B, sig);
        for (auto & alpha : into_a)
            for (auto & beta : into_b)
                if (orbit_minimal(alpha.map, beta.map, auts[ci], auts[ai], auts[bi]))
                    out.push_back(Quintuple{A, B, C, alpha, beta});
        return out;
    });
    std::vector<Quintuple> out;
    for (auto & p : parts)
        for (auto & q : p)
            out.push_back(std::move(q));
    return out;
}

auto to_string(ApStatus s) -> std::string_view
{
    switch (s) {
        case ApStatus::Holds: return "holds";
        case ApStatus::FailsAt: return "fails";
        case ApStatus::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

void settle(ApVerdict & v, int max_d, int class_bound)
{
    v.status = ApStatus::Holds;
    for (auto & inst : v.instances)
        if (! inst.certificate) {
            v.status = max_d >= class_bound ? ApStatus::FailsAt : ApStatus::Unknown;
            if (v.status == ApStatus::FailsAt)
                v.counterexample = inst.q;
            return;
        }
}

} // namespace

auto check_ap(const ModelClass & k, int quintuple_bound, int max_d, const ApOptions & options) -> ApVerdict
{
    auto qs = enumerate_quintuples(k, quintuple_bound, options.workers);
    ApVerdict v;
    v.instances = detail::parallel_map<ApInstance>(qs.size(), options.workers, [&](std::size_t i) {
        auto & q = qs[i];
        ApInstance inst{q, std::nullopt, std::nullopt};
        if (options.pushout_first && q.signature().is_relational()) {
            auto p = pushout_relational(q, options.closure);
            if (p.pushout && p.pushout->D->size() <= max_d && contains(k, *p.pushout->D)) {
                auto cert = make_certificate(q, p.pushout->D, p.pushout->iota.map, p.pushout->eta.map);
                if (cert.strong || ! options.require_strong) {
                    inst.certificate = std::move(cert);
                    return inst;
                }
            }
        }
        inst.certificate = find_amalgam(q, k, k, max_d, {options.require_strong, 1});
        return inst;
    });
    settle(v, max_d, k.max_size());
    return v;
}

auto is_strong(const AmalgamCertificate & c, const Quintuple & q) -> bool
{
    if (auto why = amalgam_failure(q, c); ! why.empty())
        fail(ErrorCode::InvalidCertificate, why);
    return images_strong(q, c.iota.map, c.eta.map, c.D->size());
}

auto check_superamalgamation(const AmalgamCertificate & c, const Quintuple & q, const std::string & rel) -> bool
{
    if (q.signature().relation_arity(rel) != 2)
        fail(ErrorCode::UnknownSymbol, "'" + rel + "' is not a binary relation of the quintuple");
    if (auto why = amalgam_failure(q, c); ! why.empty())
        fail(ErrorCode::InvalidCertificate, why);
    auto & A = *q.A;
    auto & B = *q.B;
    auto & D = *c.D;
    auto holds = [&](const FinStructure & m, int x, int y) {
        std::array<int, 2> t{x, y};
        return m.holds(rel, t);
    };
    for (int a = 0; a < A.size(); ++a)
        for (int b = 0; b < B.size(); ++b) {
            int da = c.iota.map[static_cast<std::size_t>(a)], db = c.eta.map[static_cast<std::size_t>(b)];
            auto interpolated = [&](bool a_first) {
                for (int x = 0; x < q.C->size(); ++x) {
                    int ac = q.alpha.map[static_cast<std::size_t>(x)], bc = q.beta.map[static_cast<std::size_t>(x)];
                    if (a_first ? holds(A, a, ac) && holds(B, bc, b) : holds(B, b, bc) && holds(A, ac, a))
                        return true;
                }
                return false;
            };
            if (holds(D, da, db) && ! interpolated(true))
                return false;
            if (holds(D, db, da) && ! interpolated(false))
                return false;
        }
    return true;
}

namespace {

// Insertion maps for the disjoint union of A and B glued along C.
auto glue(const Quintuple & q) -> std::tuple<int, std::vector<int>, std::vector<int>>
{
    std::vector<int> iota(static_cast<std::size_t>(q.A->size()));
    for (std::size_t a = 0; a < iota.size(); ++a)
        iota[a] = static_cast<int>(a);
    std::vector<int> eta(static_cast<std::size_t>(q.B->size()), -1);
    for (std::size_t c = 0; c < q.beta.map.size(); ++c)
        eta[static_cast<std::size_t>(q.beta.map[c])] = q.alpha.map[c];
    int next = q.A->size();
    for (auto & e : eta)
        if (e == -1)
            e = next++;
    return {next, std::move(iota), std::move(eta)};
}

} // namespace

auto pushout_empty(const Quintuple & q) -> Pushout
{
    auto [size, iota, eta] = glue(q);
    auto D = share(FinStructure(Signature(), size));
    return Pushout{D, Morphism{q.A, D, std::move(iota), Signature()}, Morphism{q.B, D, std::move(eta), Signature()}};
}

auto pushout_relational(const Quintuple & q, const std::optional<std::string> & closure) -> PushoutVerdict
{
    auto & sig = q.signature();
    if (! sig.is_relational())
        fail(ErrorCode::NotRelational, "pushouts are built only over relational signatures");
    if (closure && sig.relation_arity(*closure) != 2)
        fail(ErrorCode::UnknownSymbol, "closure relation '" + *closure + "' is not a declared binary relation");

    auto [size, iota, eta] = glue(q);
    FinStructure D(sig, size);
    std::vector<int> image;
    for (auto & [name, arity] : sig.relations()) {
        for (auto & [src, map] : {std::pair{q.A.get(), &iota}, std::pair{q.B.get(), &eta}})
            for (auto & t : src->tuples(name)) {
                image.resize(t.size());
                for (std::size_t k = 0; k < t.size(); ++k)
                    image[k] = (*map)[static_cast<std::size_t>(t[k])];
                D.set_relation(name, image);
            }
    }

    PushoutVerdict v;
    if (closure) {
        auto idx = static_cast<std::size_t>(sig.relation_index(*closure));
        auto & table = D.relation_table(idx);
        auto at = [&](int x, int y) -> std::uint8_t & {
            return table[static_cast<std::size_t>(x) * static_cast<std::size_t>(size) + static_cast<std::size_t>(y)];
        };
        for (int m = 0; m < size; ++m)
            for (int x = 0; x < size; ++x)
                if (at(x, m))
                    for (int y = 0; y < size; ++y)
                        if (at(m, y))
                            at(x, y) = 1;
        for (int x = 0; x < size; ++x)
            for (int y = x + 1; y < size; ++y)
                if (at(x, y) && at(y, x)) {
                    v.closure_failure = "closing " + *closure + " identifies distinct points " + std::to_string(x)
                        + " and " + std::to_string(y);
                    return v;
                }
    }
    auto shared = share(std::move(D));
    Morphism mi{q.A, shared, std::move(iota), sig}, me{q.B, shared, std::move(eta), sig};
    if (auto why = embedding_failure(mi); ! why.empty()) {
        v.closure_failure = "insertion of A fails after closure: " + why;
        return v;
    }
    if (auto why = embedding_failure(me); ! why.empty()) {
        v.closure_failure = "insertion of B fails after closure: " + why;
        return v;
    }
    v.pushout = Pushout{shared, std::move(mi), std::move(me)};
    return v;
}

namespace {

auto reduct_quintuple(const Quintuple & q, const Signature & l0) -> Quintuple
{
    auto A = share(reduct(*q.A, l0));
    auto B = share(reduct(*q.B, l0));
    auto C = share(reduct(*q.C, l0));
    return Quintuple{A, B, C, Morphism{C, A, q.alpha.map, l0}, Morphism{C, B, q.beta.map, l0}};
}

auto base_pushout(const Quintuple & q0, const std::optional<std::string> & closure) -> PushoutVerdict
{
    if (q0.signature().empty())
        return PushoutVerdict{pushout_empty(q0), {}};
    return pushout_relational(q0, closure);
}

} // namespace

auto check_ap_over_pushouts(const ModelClass & t1_class, const ModelClass & k0,
    const std::optional<std::string> & closure, int quintuple_bound, int max_d, int workers) -> ApVerdict
{
    auto & l0 = k0.signature();
    auto & l1 = t1_class.signature();
    if (! l0.is_subsignature_of(l1))
        fail(ErrorCode::NotSubsignature, "the base class signature must be contained in the theory signature");

    auto qs = enumerate_quintuples(t1_class, quintuple_bound, workers);
    auto Ds = iterate(t1_class, max_d, workers);
    ApVerdict v;
    v.instances = detail::parallel_map<ApInstance>(qs.size(), workers, [&](std::size_t i) {
        auto & q = qs[i];
        ApInstance inst{q, std::nullopt, std::nullopt};
        auto base = base_pushout(reduct_quintuple(q, l0), closure);
        if (! base.pushout)
            return inst;
        auto & P = *base.pushout;
        for (auto & D : Ds)
            for (auto & iota : enumerate_embeddings(q.A, D, l1)) {
                EmbeddingSearch s;
                s.fixed = fixed_for_eta(q, iota.map);
                for (auto & eta : enumerate_embeddings(q.B, D, l1, s)) {
                    std::vector<int> mu(static_cast<std::size_t>(P.D->size()));
                    for (std::size_t a = 0; a < iota.map.size(); ++a)
                        mu[static_cast<std::size_t>(P.iota.map[a])] = iota.map[a];
                    for (std::size_t b = 0; b < eta.map.size(); ++b)
                        mu[static_cast<std::size_t>(P.eta.map[b])] = eta.map[b];
                    Morphism mediator{P.D, D, std::move(mu), l0};
                    if (verify_embedding(mediator)) {
                        bool strong = images_strong(q, iota.map, eta.map, D->size());
                        inst.certificate = AmalgamCertificate{D, iota, eta, strong};
                        inst.mediator = std::move(mediator);
                        return inst;
                    }
                }
            }
        return inst;
    });
    settle(v, max_d, t1_class.max_size());
    return v;
}

// ---------------------------------------------------------------- witnesses

namespace {

struct Languages {
    Signature l0, l1, l2, l;
};

auto languages(const Theory & t1, const Theory & t2) -> Languages
{
    return {sig_intersect(t1.sig, t2.sig), t1.sig, t2.sig, sig_union(t1.sig, t2.sig)};
}

auto after(const Morphism & first, const Morphism & second) -> std::vector<int>
{
    std::vector<int> out(first.map.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = second.map[static_cast<std::size_t>(first.map[i])];
    return out;
}

auto in_range(const std::vector<int> & map, int dom, int cod) -> bool
{
    if (static_cast<int>(map.size()) != dom)
        return false;
    return std::all_of(map.begin(), map.end(), [&](int v) { return v >= 0 && v < cod; });
}

} // namespace

auto witness_failure(const Quintuple & q, const SubcompatibleWitness & w, const Theory & t1, const Theory & t2,
    const ModelClass * k0) -> std::string
{
    auto L = languages(t1, t2);
    if (! L.l.is_subsignature_of(q.signature()))
        return "quintuple does not interpret both theory signatures";
    if (w.D0->signature() != L.l0)
        return "D0 is not a structure over the shared signature";
    if (! L.l1.is_subsignature_of(w.E->signature()) || ! models_theory(*w.E, t1))
        return "E is not a model of the first theory";
    if (! L.l2.is_subsignature_of(w.F->signature()) || ! models_theory(*w.F, t2))
        return "F is not a model of the second theory";
    if (k0 && (k0->signature() != L.l0 || ! contains(*k0, *w.D0)))
        return "D0 is not in the base class";
    if (! in_range(w.alpha1.map, q.A->size(), w.D0->size()) || ! in_range(w.beta1.map, q.B->size(), w.D0->size())
        || ! in_range(w.iota0.map, w.D0->size(), w.E->size()) || ! in_range(w.eta0.map, w.D0->size(), w.F->size()))
        return "a witness map has the wrong length or leaves its codomain";

    Morphism a1{q.A, w.D0, w.alpha1.map, L.l0}, b1{q.B, w.D0, w.beta1.map, L.l0};
    Morphism i0{w.D0, w.E, w.iota0.map, L.l0}, e0{w.D0, w.F, w.eta0.map, L.l0};
    if (auto why = embedding_failure(a1); ! why.empty())
        return "alpha1: " + why;
    if (auto why = embedding_failure(b1); ! why.empty())
        return "beta1: " + why;
    if (after(q.alpha, a1) != after(q.beta, b1))
        return "alpha1 and beta1 do not agree over C";
    if (auto why = embedding_failure(i0); ! why.empty())
        return "iota0: " + why;
    if (auto why = embedding_failure(e0); ! why.empty())
        return "eta0: " + why;
    if (auto why = embedding_failure(Morphism{q.A, w.E, after(a1, i0), L.l1}); ! why.empty())
        return "alpha1 then iota0: " + why;
    if (auto why = embedding_failure(Morphism{q.B, w.E, after(b1, i0), L.l1}); ! why.empty())
        return "beta1 then iota0: " + why;
    if (auto why = embedding_failure(Morphism{q.A, w.F, after(a1, e0), L.l2}); ! why.empty())
        return "alpha1 then eta0: " + why;
    if (auto why = embedding_failure(Morphism{q.B, w.F, after(b1, e0), L.l2}); ! why.empty())
        return "beta1 then eta0: " + why;
    return {};
}

namespace {

// First (X, h: D0 -> X) with X in the class and both composites embeddings
// over the side signature.
auto side_extension(const Quintuple & q, const StructurePtr & D0, const Morphism & a1, const Morphism & b1,
    const std::vector<StructurePtr> & candidates, const Signature & l0, const Signature & side)
    -> std::optional<Morphism>
{
    for (auto & X : candidates)
        for (auto & h : enumerate_embeddings(D0, X, l0))
            if (verify_embedding(Morphism{q.A, X, after(a1, h), side})
                && verify_embedding(Morphism{q.B, X, after(b1, h), side}))
                return h;
    return std::nullopt;
}

} // namespace

auto find_subcompatible_witness(const Quintuple & q, const ModelClass & k0, const Theory & t1, const Theory & t2,
    const WitnessSearch & search) -> std::optional<SubcompatibleWitness>
{
    auto L = languages(t1, t2);
    if (k0.signature() != L.l0)
        fail(ErrorCode::SignatureMismatch, "base class signature must be the shared signature of the theories");
    if (! L.l.is_subsignature_of(q.signature()))
        fail(ErrorCode::SignatureMismatch, "quintuple does not interpret both theory signatures");

    auto q0 = reduct_quintuple(q, L.l0);
    auto Es = iterate(ModelClass::bounded(t1, search.max_e), search.max_e, search.workers);
    auto Fs = iterate(ModelClass::bounded(t2, search.max_f), search.max_f, search.workers);

    auto attempt = [&](const StructurePtr & D0, const Morphism & a1, const Morphism & b1)
        -> std::optional<SubcompatibleWitness> {
        auto i0 = side_extension(q, D0, a1, b1, Es, L.l0, L.l1);
        if (! i0)
            return std::nullopt;
        auto e0 = side_extension(q, D0, a1, b1, Fs, L.l0, L.l2);
        if (! e0)
            return std::nullopt;
        return SubcompatibleWitness{D0, i0->cod, e0->cod, Morphism{q.A, D0, a1.map, L.l0},
            Morphism{q.B, D0, b1.map, L.l0}, *i0, *e0};
    };

    if (search.pushout_first && L.l0.is_relational()) {
        auto base = base_pushout(q0, search.closure);
        if (base.pushout && base.pushout->D->size() <= search.max_d0 && contains(k0, *base.pushout->D))
            if (auto w = attempt(base.pushout->D, base.pushout->iota, base.pushout->eta))
                return w;
    }

    auto D0s = iterate(k0, search.max_d0, search.workers);
    auto hit = detail::parallel_find_first<SubcompatibleWitness>(D0s.size(), search.workers,
        [&](std::size_t i) -> std::optional<SubcompatibleWitness> {
            auto & D0 = D0s[i];
            for (auto & a1 : enumerate_embeddings(q0.A, D0, L.l0)) {
                EmbeddingSearch s;
                s.fixed = fixed_for_eta(q0, a1.map);
                for (auto & b1 : enumerate_embeddings(q0.B, D0, L.l0, s))
                    if (auto w = attempt(D0, a1, b1))
                        return w;
            }
            return std::nullopt;
        });
    if (! hit)
        return std::nullopt;
    return std::move(hit->second);
}

// ------------------------------------------------------ constructive amalgams

namespace {

void require_universal(const Theory & t1, const Theory & t2)
{
    if (! is_universal(t1))
        fail(ErrorCode::Inapplicable, "theory '" + t1.name + "' is not universal");
    if (! is_universal(t2))
        fail(ErrorCode::Inapplicable, "theory '" + t2.name + "' is not universal");
}

// Unary functions of sig defined on D from the two clauses
// f(ia(a)) = ia(f_A(a)) and f(ib(b)) = ib(f_B(b)).
void define_from_sides(FinStructure & D, const Signature & sig, const Quintuple & q, const std::vector<int> & ia,
    const std::vector<int> & ib)
{
    for (auto & [name, arity] : sig.functions()) {
        std::vector<int> table(static_cast<std::size_t>(D.size()), -1);
        auto put = [&](int at, int value) {
            auto & slot = table[static_cast<std::size_t>(at)];
            if (slot != -1 && slot != value)
                fail(ErrorCode::WellDefinednessFailure,
                    "the two clauses for " + name + " disagree at point " + std::to_string(at));
            slot = value;
        };
        for (int a = 0; a < q.A->size(); ++a) {
            std::array<int, 1> arg{a};
            put(ia[static_cast<std::size_t>(a)], ia[static_cast<std::size_t>(q.A->apply(name, arg))]);
        }
        for (int b = 0; b < q.B->size(); ++b) {
            std::array<int, 1> arg{b};
            put(ib[static_cast<std::size_t>(b)], ib[static_cast<std::size_t>(q.B->apply(name, arg))]);
        }
        for (std::size_t x = 0; x < table.size(); ++x) {
            if (table[x] == -1)
                fail(ErrorCode::WellDefinednessFailure, name + " has no defining clause at point " + std::to_string(x));
            std::array<int, 1> arg{static_cast<int>(x)};
            D.set_function(name, arg, table[x]);
        }
        (void) arity;
    }
    for (auto & name : sig.constants()) {
        int va = ia[static_cast<std::size_t>(q.A->constant(name))];
        int vb = ib[static_cast<std::size_t>(q.B->constant(name))];
        if (va != vb)
            fail(ErrorCode::WellDefinednessFailure, "the two clauses for constant " + name + " disagree");
        D.set_constant(name, va);
    }
}

auto finish(const Quintuple & q, StructurePtr D, std::vector<int> ia, std::vector<int> ib, const Theory & t1,
    const Theory & t2, ErrorCode on_failure) -> AmalgamCertificate
{
    auto cert = make_certificate(q, D, std::move(ia), std::move(ib));
    if (auto why = certificate_failure(q, cert); ! why.empty())
        fail(on_failure, "constructed amalgam does not verify: " + why);
    if (! models_theory(*D, t1))
        fail(on_failure, "constructed amalgam is not a model of '" + t1.name + "'");
    if (! models_theory(*D, t2))
        fail(on_failure, "constructed amalgam is not a model of '" + t2.name + "'");
    return cert;
}

void require_witness_shape(const Quintuple & q, const SubcompatibleWitness & w, const Languages & L)
{
    if (q.signature() != L.l)
        fail(ErrorCode::SignatureMismatch, "quintuple signature must be the union of the theory signatures");
    if (! in_range(w.alpha1.map, q.A->size(), w.D0->size()) || ! in_range(w.beta1.map, q.B->size(), w.D0->size())
        || ! in_range(w.iota0.map, w.D0->size(), w.E->size()) || ! in_range(w.eta0.map, w.D0->size(), w.F->size()))
        fail(ErrorCode::InvalidWitness, "a witness map has the wrong length or leaves its codomain");
    if (! L.l1.is_subsignature_of(w.E->signature()) || ! L.l2.is_subsignature_of(w.F->signature()))
        fail(ErrorCode::InvalidWitness, "E or F does not interpret its theory's signature");
}

} // namespace

auto prop41a_amalgam(const Quintuple & q, const SubcompatibleWitness & w, const Theory & t1, const Theory & t2)
    -> AmalgamCertificate
{
    auto L = languages(t1, t2);
    if (L.l.max_function_arity() >= 2)
        fail(ErrorCode::Inapplicable, "a function symbol has arity at least 2");
    require_universal(t1, t2);
    require_witness_shape(q, w, L);

    std::vector<int> points = w.alpha1.map;
    points.insert(points.end(), w.beta1.map.begin(), w.beta1.map.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<int> pos(static_cast<std::size_t>(w.D0->size()), -1);
    for (std::size_t i = 0; i < points.size(); ++i)
        pos[static_cast<std::size_t>(points[i])] = static_cast<int>(i);
    std::vector<int> ia, ib;
    for (int v : w.alpha1.map)
        ia.push_back(pos[static_cast<std::size_t>(v)]);
    for (int v : w.beta1.map)
        ib.push_back(pos[static_cast<std::size_t>(v)]);

    FinStructure D(L.l, static_cast<int>(points.size()));
    define_from_sides(D, L.l, q, ia, ib);

    int n = D.size();
    for (auto & [name, arity] : L.l.relations()) {
        bool in1 = L.l1.has_relation(name), in2 = L.l2.has_relation(name);
        Tuple t(static_cast<std::size_t>(arity)), te(t.size()), tf(t.size());
        for (std::size_t idx = 0; idx < ipow(n, arity); ++idx) {
            t = index_tuple(idx, arity, n);
            for (std::size_t k = 0; k < t.size(); ++k) {
                int d0 = points[static_cast<std::size_t>(t[k])];
                te[k] = w.iota0.map[static_cast<std::size_t>(d0)];
                tf[k] = w.eta0.map[static_cast<std::size_t>(d0)];
            }
            std::optional<bool> ve, vf;
            if (in1)
                ve = w.E->holds(name, te);
            if (in2)
                vf = w.F->holds(name, tf);
            if (ve && vf && *ve != *vf)
                fail(ErrorCode::InducedRelationConflict,
                    "E and F disagree on " + name + " over the points of the amalgam");
            D.set_relation(name, t, ve ? *ve : *vf);
        }
    }
    return finish(q, share(std::move(D)), std::move(ia), std::move(ib), t1, t2, ErrorCode::InvalidWitness);
}

auto prop41b_amalgam(const Quintuple & q, const SubcompatibleWitness & w, const Theory & t1, const Theory & t2)
    -> AmalgamCertificate
{
    auto L = languages(t1, t2);
    auto d1 = sig_difference(L.l1, L.l0), d2 = sig_difference(L.l2, L.l0);
    if (! d1.is_relational() || ! d2.is_relational())
        fail(ErrorCode::Inapplicable, "a signature difference is not relational");
    require_universal(t1, t2);
    require_witness_shape(q, w, L);
    if (w.D0->signature() != L.l0)
        fail(ErrorCode::InvalidWitness, "D0 is not a structure over the shared signature");

    Interpretations extra;
    int n = w.D0->size();
    auto pull = [&](const Signature & delta, const FinStructure & side, const std::vector<int> & map) {
        for (auto & [name, arity] : delta.relations()) {
            auto & tuples = extra.relations[name];
            Tuple image(static_cast<std::size_t>(arity));
            for (std::size_t idx = 0; idx < ipow(n, arity); ++idx) {
                auto t = index_tuple(idx, arity, n);
                for (std::size_t k = 0; k < t.size(); ++k)
                    image[k] = map[static_cast<std::size_t>(t[k])];
                if (side.holds(name, image))
                    tuples.push_back(t);
            }
        }
    };
    pull(d1, *w.E, w.iota0.map);
    pull(d2, *w.F, w.eta0.map);
    auto D = share(expand(*w.D0, sig_union(d1, d2), extra));
    return finish(q, D, w.alpha1.map, w.beta1.map, t1, t2, ErrorCode::InvalidWitness);
}

auto endomorphism_axioms(const std::string & f, const Signature & l0) -> std::vector<Formula>
{
    auto vars = [](int k) {
        std::vector<std::string> out;
        for (int i = 1; i <= k; ++i)
            out.push_back("x" + std::to_string(i));
        return out;
    };
    auto close = [](Formula body, const std::vector<std::string> & vs) {
        for (auto it = vs.rbegin(); it != vs.rend(); ++it)
            body = Formula::forall(*it, body);
        return body;
    };
    auto fx = [&](const std::string & v) { return Term::apply(f, {Term::variable(v)}); };

    std::vector<Formula> out;
    for (auto & [name, arity] : l0.relations()) {
        auto vs = vars(arity);
        std::vector<Term> plain, mapped;
        for (auto & v : vs) {
            plain.push_back(Term::variable(v));
            mapped.push_back(fx(v));
        }
        out.push_back(close(Formula::implication(Formula::relation(name, plain), Formula::relation(name, mapped)), vs));
    }
    for (auto & [name, arity] : l0.functions()) {
        auto vs = vars(arity);
        std::vector<Term> plain, mapped;
        for (auto & v : vs) {
            plain.push_back(Term::variable(v));
            mapped.push_back(fx(v));
        }
        out.push_back(close(Formula::equal(Term::apply(f, {Term::apply(name, plain)}), Term::apply(name, mapped)), vs));
    }
    for (auto & name : l0.constants())
        out.push_back(Formula::equal(Term::apply(f, {Term::constant(name)}), Term::constant(name)));
    return out;
}

auto prop41c_amalgam(const Quintuple & q, const Theory & t1, const Theory & t2,
    const std::optional<std::string> & closure) -> Prop41cResult
{
    auto L = languages(t1, t2);
    if (q.signature() != L.l)
        fail(ErrorCode::SignatureMismatch, "quintuple signature must be the union of the theory signatures");
    if (! L.l0.is_relational())
        fail(ErrorCode::Inapplicable, "the shared signature is not relational");
    for (auto * t : {&t1, &t2}) {
        auto delta = sig_difference(t->sig, L.l0);
        if (! delta.relations().empty() || ! delta.constants().empty())
            fail(ErrorCode::Inapplicable, "theory '" + t->name + "' adds symbols other than functions");
        for (auto & [name, arity] : delta.functions()) {
            if (arity != 1)
                fail(ErrorCode::Inapplicable, "function '" + name + "' is not unary");
            for (auto & axiom : endomorphism_axioms(name, L.l0)) {
                bool present = std::any_of(t->sentences.begin(), t->sentences.end(),
                    [&](const Formula & s) { return alpha_equivalent(s, axiom); });
                if (! present)
                    fail(ErrorCode::Inapplicable, "theory '" + t->name + "' lacks the axiom " + to_string(axiom));
            }
        }
    }
    require_universal(t1, t2);

    auto base = pushout_relational(reduct_quintuple(q, L.l0), closure);
    if (! base.pushout)
        return Prop41cResult{std::nullopt, base.closure_failure};
    auto & P = *base.pushout;
    auto delta = sig_union(sig_difference(L.l1, L.l0), sig_difference(L.l2, L.l0));
    FinStructure D = expand(*P.D, delta, [&] {
        Interpretations x;
        for (auto & [name, _] : delta.functions())
            x.functions[name] = std::vector<int>(static_cast<std::size_t>(P.D->size()), 0);
        return x;
    }());
    define_from_sides(D, delta, q, P.iota.map, P.eta.map);
    auto cert = finish(q, share(std::move(D)), P.iota.map, P.eta.map, t1, t2, ErrorCode::VerificationFailure);
    return Prop41cResult{std::move(cert), {}};
}

} // namespace amalg
