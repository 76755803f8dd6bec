#include <amalg/cli.hh>

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_bounds(CLI::App & sub, amalg::cli::RunConfig & c)
{
    sub.add_option("--max-model-size", c.max_model_size, "Largest model size to enumerate or search");
    sub.add_option("--max-d,--max-amalgam-size", c.max_amalgam_size, "Largest amalgam or extension (0: class bound)");
    sub.add_option("--max-tuple", c.max_tuple, "Largest tuple of new points in e.c. checks");
    sub.add_option("--max-rounds", c.max_rounds, "Zig-zag round limit");
    sub.add_option("--size-budget", c.size_budget, "Largest chain model (0: |E|+|F|+4)");
    sub.add_option("--quintuple-bound", c.quintuple_bound, "Largest A, B, C in enumerated quintuples");
    sub.add_option("--workers", c.workers, "Worker threads");
    sub.add_option("-o,--output", c.output, "Write the report here instead of stdout");
    sub.add_option("--format", c.format, "human or json")->check(CLI::IsMember({"human", "json"}));
}

} // namespace

auto main(int argc, char ** argv) -> int
{
    amalg::cli::RunConfig c;
    CLI::App app{"Finite workbench for amalgamation and existentially complete structures"};
    app.require_subcommand(1);

    auto * eval = app.add_subcommand("eval", "Evaluate a sentence in a structure");
    eval->add_option("--structure", c.structure)->required();
    eval->add_option("--formula", c.formula)->required();

    auto * emb = app.add_subcommand("embeddings", "Enumerate embeddings between two structures");
    emb->add_option("--dom", c.dom)->required();
    emb->add_option("--cod", c.cod)->required();
    emb->add_option("--limit", c.limit, "Stop after this many (0: all)");

    auto * en = app.add_subcommand("enumerate", "Models of a theory up to isomorphism");
    en->add_option("--theory", c.theory)->required();

    auto * ap = app.add_subcommand("check-ap", "Bounded amalgamation property check");
    ap->add_option("--class", c.model_class)->required();
    ap->add_option("--base-class", c.base_class, "Check amalgams over pushouts in this base class");
    ap->add_flag("--pushout-first", c.pushout_first);
    ap->add_flag("--require-strong", c.require_strong);

    auto * po = app.add_subcommand("pushout", "Pushout of a quintuple");
    po->add_option("--quintuple", c.quintuple)->required();
    po->add_option("--kind", c.kind)->check(CLI::IsMember({"empty", "relational"}));

    auto * ec = app.add_subcommand("ec", "Existential completeness or e.c. compatibility");
    ec->add_option("--class", c.model_class)->required();
    ec->add_option("--structure", c.structure);
    ec->add_option("--theory", c.theory);
    ec->add_flag("--compatibility", c.compatibility, "Check --theory against the class");

    auto * am = app.add_subcommand("amalgam", "Find, construct or verify an amalgam");
    am->add_option("--quintuple", c.quintuple);
    am->add_option("--class", c.model_class);
    am->add_option("--theory", c.theory);
    am->add_option("--theory2", c.theory2);
    am->add_option("--witness", c.witness);
    am->add_option("--method", c.method)->check(CLI::IsMember({"search", "prop41a", "prop41b", "prop41c"}));
    am->add_option("--verify", c.verify, "Re-verify a certificate file");
    am->add_flag("--require-strong", c.require_strong);

    auto * co = app.add_subcommand("combine", "Zig-zag chain for a union of two theories");
    co->add_option("--theory", c.theory)->required();
    co->add_option("--theory2", c.theory2)->required();
    co->add_option("--base-class", c.base_class)->required();
    co->add_option("--structure", c.structure, "A model of both theories");
    co->add_option("--chain-input", c.chain_input, "D0, E, F, iota0, eta0");

    auto * un = app.add_subcommand("union-ap", "Amalgamate quintuples of the union of two theories");
    un->add_option("--theory", c.theory)->required();
    un->add_option("--theory2", c.theory2)->required();
    un->add_option("--base-class", c.base_class)->required();
    un->add_option("--quintuple", c.quintuple, "One quintuple (default: all within --quintuple-bound)");
    un->add_flag("--pushout-first", c.pushout_first);

    for (auto * sub : {eval, emb, en, ap, po, ec, am, co, un}) {
        add_bounds(*sub, c);
        if (sub == ap || sub == po || sub == am || sub == un)
            sub->add_option_function<std::string>("--closure", [&](const std::string & r) { c.closure = r; },
                "Relation to close transitively in pushouts");
    }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? 0 : amalg::cli::BadInput;
    }
    c.command = app.get_subcommands().front()->get_name();
    return amalg::cli::run(c, std::cout, std::cerr);
}
