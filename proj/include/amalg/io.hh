#pragma once

#include <amalg/amalgamation.hh>
#include <amalg/chain.hh>
#include <amalg/classes.hh>
#include <amalg/ec.hh>

#include <json.hpp>

#include <filesystem>
#include <string>

namespace amalg::io {

// nlohmann::json keeps object keys sorted, which keeps output byte-stable.
using Json = nlohmann::json;

/// InputError if the file is missing or is not valid JSON.
auto load_json(const std::filesystem::path & path) -> Json;

auto to_json(const Signature & sig) -> Json;
auto to_json(const FinStructure & m) -> Json;
auto to_json(const Theory & t) -> Json;
auto to_json(const Morphism & h) -> Json; // map and signature only
auto to_json(const Quintuple & q) -> Json;
auto to_json(const AmalgamCertificate & c) -> Json;
auto to_json(const SubcompatibleWitness & w) -> Json;
auto to_json(const EcCounterexample & c) -> Json;
auto to_json(const EcVerdict & v) -> Json;
auto to_json(const EcBounds & b) -> Json;
auto to_json(const ChainState & s) -> Json;
auto to_json(const FusionResult & r) -> Json;

/// Reads JSON documents, resolving string references to other files
/// relative to the directory of the file that contains them. Every reader
/// rejects unknown fields with InputError.
class Reader {
public:
    explicit Reader(std::filesystem::path base = ".");

    static auto from_file(const std::filesystem::path & path) -> std::pair<Reader, Json>;

    auto signature(const Json & j) const -> Signature;
    auto structure(const Json & j) const -> FinStructure;
    auto theory(const Json & j) const -> Theory;
    auto model_class(const Json & j) const -> ModelClass;
    auto quintuple(const Json & j) const -> Quintuple;
    auto witness(const Json & j, const Quintuple & q, const Signature & l0) const -> SubcompatibleWitness;
    auto certificate(const Json & j, const Quintuple & q) const -> AmalgamCertificate;

private:
    // A string is a path to load; anything else is returned as is, with
    // the reader that resolves references inside it.
    auto deref(const Json & j) const -> std::pair<Reader, Json>;

    std::filesystem::path _base;
};

/// Integer vector with an InputError naming the field on bad input.
auto int_vector(const Json & j, const std::string & field) -> std::vector<int>;

} // namespace amalg::io
