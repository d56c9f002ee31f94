#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "regflip/cli.hpp"

int main(int argc, char** argv) {
    namespace cli = regflip::cli;
    CLI::App app{"regflip - enumerate regular triangulations of integer point configurations"};
    app.require_subcommand(1);

    cli::EnumerateOptions eo;
    bool all = false;
    auto* enumerate = app.add_subcommand("enumerate", "enumerate triangulations by reverse search");
    enumerate->add_option("--input", eo.input, "point configuration file")->required();
    auto* reg = enumerate->add_flag("--regular", "restrict to regular flips (default)");
    enumerate->add_flag("--all", all, "follow all flips")->excludes(reg);
    enumerate->add_flag("--print", eo.print, "print each triangulation with its GKZ-vector");
    enumerate->add_flag("--stats", eo.stats, "print search and screening counters");
    enumerate->add_option("--flip-cache", eo.flip_cache, "flip cache capacity (0 disables)");
    enumerate->add_flag("--orbits", eo.orbits, "count orbits under the input symmetry group");
    enumerate->add_flag("--baseline", eo.baseline, "use the visited-set DFS instead of reverse search");
    enumerate->add_option("--node-budget", eo.node_budget, "abort with exit code 4 after this many triangulations");

    std::string input, triangulation;
    auto* regular = app.add_subcommand("regular", "decide regularity of a triangulation");
    regular->add_option("--input", input, "point configuration file")->required();
    regular->add_option("--triangulation", triangulation, "triangulation file")->required();

    auto* flips = app.add_subcommand("flips", "list the flips of a triangulation");
    flips->add_option("--input", input, "point configuration file")->required();
    flips->add_option("--triangulation", triangulation, "triangulation file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::usage;
    }

    if (*enumerate) {
        eo.mode = all ? regflip::SearchMode::all_flips : regflip::SearchMode::regular_only;
        return cli::enumerate(eo, std::cout, std::cerr);
    }
    if (*regular)
        return cli::regular(input, triangulation, std::cout, std::cerr);
    return cli::flips(input, triangulation, std::cout, std::cerr);
}
