#pragma once

#include <amalg/classes.hh>
#include <amalg/morphism.hh>

#include <optional>
#include <set>
#include <string>

namespace amalg {

struct EcBounds {
    int max_d = 3;
    int max_tuple = 3;
    int workers = 1;
};

enum class EcStatus { Verified, Refuted, Unknown };

auto to_string(EcStatus s) -> std::string_view;

/// A diagram-derived existential sentence true in D and false in E.
struct EcCounterexample {
    StructurePtr D;
    Morphism iota; // E -> D
    std::set<DiagramLiteral> literals;
    Formula in_d; // parameters name elements of D
    Formula in_e; // the same sentence with parameters pulled back to E
};

struct EcVerdict {
    EcStatus status = EcStatus::Unknown;
    std::optional<EcCounterexample> counterexample;
    EcBounds bounds;
};

/// For every D in the class up to max_d, every embedding of e into D and
/// every set S of at most max_tuple points outside the image, the
/// existential closure of the diagram of image u S must hold in e.
/// Verified only when max_d reaches the class bound and max_tuple >= max_d;
/// Unknown when everything passed within smaller bounds.
/// MembershipError unless e is in k0.
auto is_ec(const FinStructure & e, const ModelClass & k0, const EcBounds & bounds) -> EcVerdict;

/// Re-checks a refutation: iota is an embedding, in_d holds in D and in_e
/// fails in e.
auto counterexample_holds(const FinStructure & e, const EcCounterexample & c) -> bool;

struct EcExtension {
    StructurePtr B;
    Morphism embedding; // e -> B over t's signature
};

/// Smallest B |= t (by size, then canonical order) with an embedding of e
/// and an e.c. reduct in k0. Returns e itself with the identity when its
/// reduct is already e.c. Sizes are capped by max_size and by the bound of
/// k0. MembershipError unless e |= t and its reduct is in k0.
auto ec_closure(const StructurePtr & e, const Theory & t, const ModelClass & k0, int max_size,
    const EcBounds & bounds) -> std::optional<EcExtension>;

struct EcCompatibility {
    EcStatus status = EcStatus::Unknown;
    std::optional<FinStructure> model;
    int condition = 0; // 1 or 2 when refuted
    std::string reason;
    std::size_t models_checked = 0;
};

/// Bounded check that reducts of models of t1 lie in k0 and that every
/// model of size <= model_bound extends to one with an e.c. reduct.
auto check_ec_compatibility(const Theory & t1, const ModelClass & k0, int model_bound, const EcBounds & bounds)
    -> EcCompatibility;

} // namespace amalg
