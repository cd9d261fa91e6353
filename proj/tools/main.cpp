#include "contactsplit/commands.hpp"

#include <CLI11.hpp>

#include <string>
#include <vector>

int main(int argc, char** argv) {
    CLI::App app{"contact-split: displacement-force splitting solvers for frictionless contact"};
    app.require_subcommand(1);

    std::string solve_config, sweep_config, validate_config, gen_config;
    std::vector<std::string> traces;
    std::string report_dir = "report";

    CLI::App* solve = app.add_subcommand("solve", "solve one case and write trace + summary");
    solve->add_option("config", solve_config, "config file")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "parameter/scheme sweep into a results table");
    sweep->add_option("config", sweep_config, "config file")->required();

    CLI::App* validate = app.add_subcommand("validate", "compare against reference oracles");
    validate->add_option("config", validate_config, "config file")->required();

    CLI::App* gen = app.add_subcommand("gen", "generate a problem bundle directory");
    gen->add_option("config", gen_config, "config file")->required();

    CLI::App* report = app.add_subcommand("report", "emit gnuplot scripts from trace CSVs");
    report->add_option("traces", traces, "trace CSV files")->required();
    report->add_option("-o,--out", report_dir, "output directory (default: report)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 4;
    }

    if (solve->parsed()) return contactsplit::cmd_solve(solve_config);
    if (sweep->parsed()) return contactsplit::cmd_sweep(sweep_config);
    if (validate->parsed()) return contactsplit::cmd_validate(validate_config);
    if (gen->parsed()) return contactsplit::cmd_gen(gen_config);
    if (report->parsed()) return contactsplit::cmd_report(traces, report_dir);
    return 4;
}
