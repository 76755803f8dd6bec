#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace amalg::cli {

enum ExitCode : int {
    Success = 0,    // verified, holds, found
    Refuted = 1,    // refuted, fails, rejected
    Unknown = 2,    // nothing found within bounds
    BadInput = 3,
    InternalFailure = 4,
};

struct RunConfig {
    std::string command;

    // Input files. Which ones a command needs is checked by run().
    std::string structure, dom, cod;
    std::string theory, theory2;
    std::string model_class, base_class;
    std::string quintuple, witness, chain_input, verify;
    std::string formula;

    std::string method = "search"; // amalgam: search, prop41a, prop41b, prop41c
    std::string kind = "relational"; // pushout: empty, relational
    std::optional<std::string> closure;
    bool pushout_first = false;
    bool require_strong = false;
    bool compatibility = false; // ec: check the theory against the class

    int max_model_size = 3;
    int max_amalgam_size = 0; // 0: the class bound
    int max_tuple = 3;
    int max_rounds = 8;
    int size_budget = 0;
    int quintuple_bound = 2;
    int limit = 0;
    int workers = 1;

    std::string output; // empty: the out stream
    std::string format = "human"; // human, json
};

/// Runs one command, writing the report to `out` (or config.output) and
/// diagnostics to `err`. Returns an ExitCode.
auto run(const RunConfig & config, std::ostream & out, std::ostream & err) -> int;

} // namespace amalg::cli
