#pragma once

#include <amalg/classes.hh>
#include <amalg/morphism.hh>

#include <optional>
#include <string>
#include <vector>

namespace amalg {

/// A span A <-alpha- C -beta-> B of embeddings over a common signature.
struct Quintuple {
    StructurePtr A, B, C;
    Morphism alpha, beta;

    auto signature() const -> const Signature & { return C->signature(); }
};

/// SignatureMismatch unless A, B, C share a signature; InputError unless
/// alpha and beta are embeddings.
auto make_quintuple(StructurePtr A, StructurePtr B, StructurePtr C, std::vector<int> alpha, std::vector<int> beta)
    -> Quintuple;

struct AmalgamCertificate {
    StructurePtr D;
    Morphism iota; // A -> D
    Morphism eta;  // B -> D
    bool strong = false;
};

/// Builds a certificate and computes its strong flag. Does not verify.
auto make_certificate(const Quintuple & q, StructurePtr D, std::vector<int> iota, std::vector<int> eta)
    -> AmalgamCertificate;

/// Re-verifies from scratch: both maps are embeddings over the quintuple's
/// signature, the square commutes, and the strong flag matches the images.
/// Returns the first problem found, or an empty string.
auto certificate_failure(const Quintuple & q, const AmalgamCertificate & c) -> std::string;

auto verify_certificate(const Quintuple & q, const AmalgamCertificate & c) -> bool;

struct AmalgamSearch {
    bool require_strong = false;
    int workers = 1;
};

/// First certificate with D in h of size at most max_d, ordered by D, then
/// iota, then eta. MembershipError if A, B or C is not in k.
auto find_amalgam(const Quintuple & q, const ModelClass & k, const ModelClass & h, int max_d,
    const AmalgamSearch & search = {}) -> std::optional<AmalgamCertificate>;

/// Every quintuple with |C|, |A|, |B| <= bound up to isomorphism: canonical
/// C, A, B, and (alpha, beta) minimal over the automorphism groups.
auto enumerate_quintuples(const ModelClass & k, int bound, int workers = 1) -> std::vector<Quintuple>;

enum class ApStatus { Holds, FailsAt, Unknown };

auto to_string(ApStatus s) -> std::string_view;

struct ApInstance {
    Quintuple q;
    std::optional<AmalgamCertificate> certificate;
    /// check_ap_over_pushouts only: the map from the base pushout into D.
    std::optional<Morphism> mediator;
};

struct ApVerdict {
    ApStatus status = ApStatus::Holds;
    std::optional<Quintuple> counterexample;
    std::vector<ApInstance> instances;
};

struct ApOptions {
    /// Try the relational pushout (closed under `closure` if set) as the
    /// amalgam before searching.
    bool pushout_first = false;
    std::optional<std::string> closure;
    bool require_strong = false;
    int workers = 1;
};

/// Holds if every enumerated quintuple has an amalgam of size <= max_d in
/// k. A missing amalgam yields FailsAt only when max_d reaches the class
/// bound, so the search was exhaustive, and Unknown otherwise.
auto check_ap(const ModelClass & k, int quintuple_bound, int max_d, const ApOptions & options = {}) -> ApVerdict;

/// InvalidCertificate if c does not certify q.
auto is_strong(const AmalgamCertificate & c, const Quintuple & q) -> bool;

/// Two-sided interpolation: rel(iota(a), eta(b)) in D implies some c with
/// rel(a, alpha(c)) in A and rel(beta(c), b) in B, and symmetrically.
/// UnknownSymbol unless rel is a declared binary relation.
auto check_superamalgamation(const AmalgamCertificate & c, const Quintuple & q, const std::string & rel) -> bool;

struct Pushout {
    StructurePtr D;
    Morphism iota, eta;
};

/// Universe A followed by the points of B outside beta(C), empty signature.
auto pushout_empty(const Quintuple & q) -> Pushout;

struct PushoutVerdict {
    std::optional<Pushout> pushout;
    std::string closure_failure; // set when the closure breaks antisymmetry or reflection
};

/// Union of the images of A's and B's relations over the universe of
/// pushout_empty. With a closure relation, that relation is transitively
/// closed. NotRelational unless the signature is relational.
auto pushout_relational(const Quintuple & q, const std::optional<std::string> & closure) -> PushoutVerdict;

/// For every quintuple of t1-models, looks for an amalgam in t1_class of
/// size <= max_d whose k0-reduct receives an embedding from the k0 pushout
/// commuting with the insertions. The base pushout is pushout_empty when
/// k0's signature is empty and pushout_relational otherwise.
auto check_ap_over_pushouts(const ModelClass & t1_class, const ModelClass & k0,
    const std::optional<std::string> & closure, int quintuple_bound, int max_d, int workers = 1) -> ApVerdict;

struct SubcompatibleWitness {
    StructurePtr D0, E, F;
    Morphism alpha1; // A -> D0 over L0
    Morphism beta1;  // B -> D0 over L0
    Morphism iota0;  // D0 -> E over L0
    Morphism eta0;   // D0 -> F over L0
};

/// Checks every witness condition; L0 is the intersection of the two
/// theory signatures. Empty string when valid. When k0 is given, D0 must
/// belong to it.
auto witness_failure(const Quintuple & q, const SubcompatibleWitness & w, const Theory & t1, const Theory & t2,
    const ModelClass * k0 = nullptr) -> std::string;

struct WitnessSearch {
    int max_d0 = 3;
    int max_e = 3;
    int max_f = 3;
    /// Try D0 = relational pushout of the L0 reducts before searching.
    bool pushout_first = false;
    std::optional<std::string> closure;
    int workers = 1;
};

/// First witness ordered by D0 (size, canonical), alpha1, beta1, E, iota0,
/// F, eta0.
auto find_subcompatible_witness(const Quintuple & q, const ModelClass & k0, const Theory & t1, const Theory & t2,
    const WitnessSearch & search = {}) -> std::optional<SubcompatibleWitness>;

/// Amalgam carved out of D0 as alpha1(A) u beta1(B), unary functions from
/// both sides, relations induced from E and F. Inapplicable without the
/// hypotheses; WellDefinednessFailure, InducedRelationConflict or
/// InvalidWitness when the witness is bad.
auto prop41a_amalgam(const Quintuple & q, const SubcompatibleWitness & w, const Theory & t1, const Theory & t2)
    -> AmalgamCertificate;

/// D0 expanded by the relations of both signature differences pulled back
/// from E and F. Inapplicable unless both differences are relational;
/// InvalidWitness when the result does not verify.
auto prop41b_amalgam(const Quintuple & q, const SubcompatibleWitness & w, const Theory & t1, const Theory & t2)
    -> AmalgamCertificate;

struct Prop41cResult {
    std::optional<AmalgamCertificate> certificate;
    std::string closure_failure;
};

/// Relational pushout of the L0 reducts, extended by the unary functions of
/// both signature differences. Inapplicable unless L0 is relational, the
/// differences have only unary functions, both theories are universal and
/// each extra function has its endomorphism axioms.
auto prop41c_amalgam(const Quintuple & q, const Theory & t1, const Theory & t2,
    const std::optional<std::string> & closure) -> Prop41cResult;

/// The sentences saying f is an endomorphism of the L0 structure.
auto endomorphism_axioms(const std::string & f, const Signature & l0) -> std::vector<Formula>;

} // namespace amalg
