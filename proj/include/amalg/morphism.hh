#pragma once

#include <amalg/core.hh>

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace amalg {

/// A map between the universes of two structures, checked with respect to
/// the signature `over`. Composition is diagrammatic: compose(f, g) first
/// applies f, then g.
struct Morphism {
    StructurePtr dom;
    StructurePtr cod;
    std::vector<int> map;
    Signature over;
};

/// Checks totality and range; fails with RangeError otherwise.
auto make_morphism(StructurePtr dom, StructurePtr cod, std::vector<int> map, Signature over) -> Morphism;

auto identity(StructurePtr m, Signature over) -> Morphism;
auto identity(StructurePtr m) -> Morphism;

/// Injective, preserves and reflects every relation of `over`, commutes
/// with its functions and constants. NotSubsignature if `over` is not
/// contained in both signatures.
auto verify_embedding(const Morphism & h) -> bool;

/// Human-readable reason the map is not an embedding; empty if it is.
auto embedding_failure(const Morphism & h) -> std::string;

struct EmbeddingSearch {
    std::size_t limit = std::numeric_limits<std::size_t>::max();
    /// Optional partial map; -1 entries are free.
    std::vector<int> fixed;
    int workers = 1;
};

/// All embeddings dom -> cod over `over` in lexicographic order of the map.
auto enumerate_embeddings(const StructurePtr & dom, const StructurePtr & cod, const Signature & over,
    const EmbeddingSearch & search = {}) -> std::vector<Morphism>;

auto first_embedding(const StructurePtr & dom, const StructurePtr & cod, const Signature & over,
    const std::vector<int> & fixed = {}) -> std::optional<Morphism>;

/// Diagrammatic composite x -> g(f(x)), over the intersection of the two
/// signatures. DomainMismatch unless f's codomain and g's domain agree on
/// that intersection.
auto compose(const Morphism & f, const Morphism & g) -> Morphism;

/// compose(p, q) and compose(r, s) are pointwise equal.
auto squares_commute(const Morphism & p, const Morphism & q, const Morphism & r, const Morphism & s) -> bool;

auto is_injective(const Morphism & h) -> bool;
auto is_bijective(const Morphism & h) -> bool;

/// NotBijective unless h is a bijection.
auto inverse(const Morphism & h) -> Morphism;

/// Sorted image of h.
auto image(const Morphism & h) -> std::vector<int>;

/// Same map, checked against a different pair of structures and signature.
auto retarget(const Morphism & h, StructurePtr dom, StructurePtr cod, Signature over) -> Morphism;

} // namespace amalg
