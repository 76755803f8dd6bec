#include <amalg/ec.hh>
#include <amalg/detail/parallel.hh>

#include <algorithm>

namespace amalg {

auto to_string(EcStatus s) -> std::string_view
{
    switch (s) {
        case EcStatus::Verified: return "verified";
        case EcStatus::Refuted: return "refuted";
        case EcStatus::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

// Calls fn on each k-subset of items in lexicographic order until it
// returns true; reports whether it did.
template <typename F>
auto any_subset(const std::vector<int> & items, std::size_t k, F && fn) -> bool
{
    if (k > items.size())
        return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    std::vector<int> chosen(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i)
            chosen[i] = items[idx[i]];
        if (fn(chosen))
            return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == items.size() - k + i - 1)
            --i;
        if (i == 0)
            return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

struct Probe {
    const FinStructure & e;
    const Signature & sig;
    const StructurePtr & D;
    const Morphism & iota;
    std::vector<int> pullback; // D element -> e element, -1 outside the image

    auto test(const std::vector<int> & extra) const -> std::optional<EcCounterexample>
    {
        std::set<int> keep(iota.map.begin(), iota.map.end());
        std::set<int> params = keep;
        params.insert(extra.begin(), extra.end());
        auto lits = atomic_diagram(*D, sig, params);
        auto in_d = existentialize(lits, keep);
        auto in_e = rename_parameters(in_d, pullback);
        if (evaluate(e, in_e))
            return std::nullopt;
        return EcCounterexample{D, iota, std::move(lits), std::move(in_d), std::move(in_e)};
    }
};

auto refute_in(const FinStructure & e, const StructurePtr & E, const StructurePtr & D, const Signature & sig,
    int max_tuple) -> std::optional<EcCounterexample>
{
    for (auto & iota : enumerate_embeddings(E, D, sig)) {
        Probe probe{e, sig, D, iota, std::vector<int>(static_cast<std::size_t>(D->size()), -1)};
        for (std::size_t x = 0; x < iota.map.size(); ++x)
            probe.pullback[static_cast<std::size_t>(iota.map[x])] = static_cast<int>(x);
        std::vector<int> outside;
        for (int d = 0; d < D->size(); ++d)
            if (probe.pullback[static_cast<std::size_t>(d)] == -1)
                outside.push_back(d);
        std::size_t top = std::min(outside.size(), static_cast<std::size_t>(std::max(0, max_tuple)));
        if (top == 0)
            continue;
        // A failing set stays failing when enlarged, so if every set of the
        // largest size passes, all smaller ones do too.
        bool all_pass = ! any_subset(outside, top, [&](const std::vector<int> & s) { return probe.test(s).has_value(); });
        if (all_pass)
            continue;
        std::optional<EcCounterexample> found;
        for (std::size_t k = 1; k <= top && ! found; ++k)
            any_subset(outside, k, [&](const std::vector<int> & s) {
                found = probe.test(s);
                return found.has_value();
            });
        return found;
    }
    return std::nullopt;
}

auto ec_complete(const ModelClass & k0, const EcBounds & bounds) -> bool
{
    return bounds.max_d >= k0.max_size() && bounds.max_tuple >= bounds.max_d;
}

} // namespace

auto is_ec(const FinStructure & e, const ModelClass & k0, const EcBounds & bounds) -> EcVerdict
{
    if (! contains(k0, e))
        fail(ErrorCode::MembershipError, "structure is not in the class");
    auto E = std::make_shared<const FinStructure>(e);
    auto Ds = iterate(k0, bounds.max_d, bounds.workers);
    auto hit = detail::parallel_find_first<EcCounterexample>(Ds.size(), bounds.workers,
        [&](std::size_t i) { return refute_in(e, E, Ds[i], k0.signature(), bounds.max_tuple); });
    EcVerdict v;
    v.bounds = bounds;
    if (hit) {
        v.status = EcStatus::Refuted;
        v.counterexample = std::move(hit->second);
    }
    else
        v.status = ec_complete(k0, bounds) ? EcStatus::Verified : EcStatus::Unknown;
    return v;
}

auto counterexample_holds(const FinStructure & e, const EcCounterexample & c) -> bool
{
    if (c.iota.dom->size() != e.size() || c.iota.cod != c.D || ! verify_embedding(c.iota))
        return false;
    std::vector<int> pullback(static_cast<std::size_t>(c.D->size()), -1);
    for (std::size_t x = 0; x < c.iota.map.size(); ++x)
        pullback[static_cast<std::size_t>(c.iota.map[x])] = static_cast<int>(x);
    try {
        if (! (rename_parameters(c.in_d, pullback) == c.in_e))
            return false;
    }
    catch (const Error &) {
        return false;
    }
    return evaluate(*c.D, c.in_d) && ! evaluate(e, c.in_e);
}

namespace {

auto closure_in(const StructurePtr & e, const ModelClass & t_class, const ModelClass & k0, int max_size,
    const EcBounds & bounds) -> std::optional<EcExtension>
{
    auto & t = *t_class.theory();
    auto & l0 = k0.signature();
    if (! l0.is_subsignature_of(t.sig))
        fail(ErrorCode::NotSubsignature, "base class signature is not contained in the theory signature");
    if (! models_theory(*e, t))
        fail(ErrorCode::MembershipError, "structure is not a model of '" + t.name + "'");
    auto r = reduct(*e, l0);
    if (! contains(k0, r))
        fail(ErrorCode::MembershipError, "reduct of the structure is not in the base class");
    if (max_size < e->size())
        return std::nullopt;
    if (is_ec(r, k0, bounds).status == EcStatus::Verified)
        return EcExtension{e, identity(e, t.sig)};

    int cap = std::min(max_size, k0.max_size());
    for (auto & B : iterate(t_class, cap, bounds.workers)) {
        if (B->size() < e->size())
            continue;
        auto rb = reduct(*B, l0);
        if (! contains(k0, rb))
            continue;
        auto h = first_embedding(e, B, t.sig);
        if (! h)
            continue;
        if (is_ec(rb, k0, bounds).status == EcStatus::Verified)
            return EcExtension{B, std::move(*h)};
    }
    return std::nullopt;
}

} // namespace

auto ec_closure(const StructurePtr & e, const Theory & t, const ModelClass & k0, int max_size,
    const EcBounds & bounds) -> std::optional<EcExtension>
{
    auto t_class = ModelClass::bounded(t, std::max(0, std::min(max_size, k0.max_size())));
    return closure_in(e, t_class, k0, max_size, bounds);
}

auto check_ec_compatibility(const Theory & t1, const ModelClass & k0, int model_bound, const EcBounds & bounds)
    -> EcCompatibility
{
    if (! k0.signature().is_subsignature_of(t1.sig))
        fail(ErrorCode::NotSubsignature, "base class signature is not contained in the theory signature");
    EcCompatibility out;
    out.status = EcStatus::Verified;
    auto t_class = ModelClass::bounded(t1, std::max(model_bound, k0.max_size()));
    std::optional<EcCompatibility> unknown;
    for (auto & m : iterate(t_class, model_bound, bounds.workers)) {
        ++out.models_checked;
        if (! contains(k0, reduct(*m, k0.signature()))) {
            out.status = EcStatus::Refuted;
            out.model = *m;
            out.condition = 1;
            out.reason = "reduct is not in the base class";
            return out;
        }
        if (closure_in(m, t_class, k0, k0.max_size(), bounds))
            continue;
        if (ec_complete(k0, bounds)) {
            out.status = EcStatus::Refuted;
            out.model = *m;
            out.condition = 2;
            out.reason = "no extension with an e.c. reduct exists in the bounded class";
            return out;
        }
        if (! unknown) {
            unknown = out;
            unknown->status = EcStatus::Unknown;
            unknown->model = *m;
            unknown->reason = "no extension found within the e.c. bounds";
        }
    }
    if (unknown) {
        unknown->models_checked = out.models_checked;
        return *unknown;
    }
    return out;
}

} // namespace amalg
