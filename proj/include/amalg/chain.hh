#pragma once

#include <amalg/amalgamation.hh>
#include <amalg/ec.hh>

#include <optional>
#include <string>
#include <vector>

namespace amalg {

enum class Side { E, F };

auto to_string(Side s) -> std::string_view;

struct ChainBounds {
    int max_rounds = 8;
    /// Largest model the chain may build; 0 means |E| + |F| + 4.
    int size_budget = 0;
    EcBounds ec;
    /// Quintuple bound for the AP check on the base class.
    int ap_quintuple_bound = 2;
    int workers = 1;
};

/// One new model on one side of the chain.
struct ChainStep {
    Side side;
    int index;                    // position on its side
    StructurePtr model;
    Morphism connect;             // previous model on the side -> model, over the side signature
    std::optional<Morphism> cross; // tip of the other side -> model, over the shared signature
    int cross_from = -1;           // index of that tip on the other side
    std::vector<std::string> verified;
};

/// Two chains E = E0 -> E1 -> ... and F = F0 -> F1 -> ... over a common
/// base D0, linked by cross maps that alternate direction.
struct ChainState {
    Signature l0, l1, l2;
    StructurePtr d0;
    Morphism iota0, eta0;
    std::vector<StructurePtr> e_side, f_side;
    std::vector<Morphism> e_connect, f_connect;
    std::vector<ChainStep> steps;

    auto tip(Side s) const -> const StructurePtr & { return s == Side::E ? e_side.back() : f_side.back(); }
};

auto start_chain(StructurePtr d0, StructurePtr e, StructurePtr f, Morphism iota0, Morphism eta0,
    const Theory & t1, const Theory & t2) -> ChainState;

/// Equations of the whole chain diagram, each either verified or not:
/// every path from D0 to a model agrees, and consecutive cross maps compose
/// to the same-side connecting map.
struct ChainCheck {
    std::vector<std::string> verified;
    std::vector<std::string> failed;
};

auto check_chain(const ChainState & s) -> ChainCheck;

/// ec_closure with the embedding over the theory's signature.
auto saturate_ec(const StructurePtr & m, const Theory & t, const ModelClass & k0, int max_size,
    const EcBounds & bounds) -> std::optional<EcExtension>;

/// Appends the e.c. saturation of one side's tip, with no cross map.
auto saturate_side(const ChainState & s, Side side, const Theory & t, const ModelClass & k0, int max_size,
    const EcBounds & bounds) -> std::optional<ChainState>;

/// Grows `side` by a model of t_side receiving the side's tip and, over the
/// shared signature, the other side's tip, so the whole diagram commutes;
/// then re-saturates it.
auto zigzag_step(const ChainState & s, Side side, const Theory & t_side, const ModelClass & k0,
    const ChainBounds & bounds) -> std::optional<ChainState>;

/// The last cross map, oriented F tip -> E tip, when it and the previous
/// cross map are both bijective.
auto detect_stabilization(const ChainState & s) -> std::optional<Morphism>;

struct FusionResult {
    StructurePtr G;
    Morphism iota; // E -> G over L1
    Morphism eta;  // F -> G over L2
    ChainState trace;
    EcVerdict ec_flag;
    int rounds = 0;
    bool ap_tainted = false; // the base class AP check did not come back Holds
};

/// G is the E tip with the F-only symbols transported along kappa
/// (F tip -> E tip). VerificationFailure unless every invariant holds.
auto fuse(const ChainState & s, const Morphism & kappa, const Theory & t1, const Theory & t2, const ModelClass & k0,
    const EcBounds & bounds) -> FusionResult;

struct Lemma21Result {
    std::optional<FusionResult> fusion;
    std::string none_reason;
};

/// HypothesisFailure names the failing hypothesis.
auto lemma21(const StructurePtr & d0, const StructurePtr & e, const StructurePtr & f, const Morphism & iota0,
    const Morphism & eta0, const Theory & t1, const Theory & t2, const ModelClass & k0, const ChainBounds & bounds)
    -> Lemma21Result;

struct Theorem31Result {
    std::optional<FusionResult> fusion;
    std::optional<Morphism> embedding; // C -> G over L1 u L2
    std::string none_reason;
};

auto theorem31(const StructurePtr & c, const Theory & t1, const Theory & t2, const ModelClass & k0,
    const ChainBounds & bounds) -> Theorem31Result;

struct Theorem34Result {
    std::optional<AmalgamCertificate> certificate;
    std::optional<SubcompatibleWitness> witness;
    std::optional<FusionResult> fusion;
    std::string none_phase; // "witness" or "chain"
    std::string none_reason;
};

auto theorem34(const Quintuple & q, const Theory & t1, const Theory & t2, const ModelClass & k0,
    const ChainBounds & bounds, const WitnessSearch & witness) -> Theorem34Result;

} // namespace amalg
