#pragma once

#include <amalg/logic.hh>

#include <memory>
#include <vector>

namespace amalg {

/// All models of t of exactly size n, one per isomorphism class, in
/// StructureKey order. Universal sentences prune partial assignments.
auto enumerate_models(const Theory & t, int n, int workers = 1) -> std::vector<FinStructure>;

/// Either an explicit finite list of structures (kept canonical and
/// deduplicated) or the models of a theory up to a size bound. Copies share
/// one lazily filled, thread-safe cache.
class ModelClass {
public:
    static auto explicit_list(Signature sig, const std::vector<FinStructure> & members) -> ModelClass;
    static auto bounded(Theory t, int max_size) -> ModelClass;

    auto signature() const -> const Signature &;
    auto is_bounded() const -> bool;
    auto theory() const -> const Theory *;

    /// Largest size a member can have. For explicit lists, the largest
    /// listed size.
    auto max_size() const -> int;

    /// Canonical representatives of size n.
    auto members_of_size(int n, int workers = 1) const -> const std::vector<FinStructure> &;

    /// Shared handles to the same representatives.
    auto shared_members_of_size(int n, int workers = 1) const -> const std::vector<StructurePtr> &;

private:
    struct State;
    std::shared_ptr<State> _state;
};

/// SignatureMismatch unless m has the class's signature.
auto contains(const ModelClass & k, const FinStructure & m) -> bool;

/// Members of size at most max_size (capped by the class bound), by size and
/// then canonical order.
auto iterate(const ModelClass & k, int max_size, int workers = 1) -> std::vector<StructurePtr>;

} // namespace amalg
