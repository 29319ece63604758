#include "lsseq/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    CLI::App app{"Leray-Serre spectral sequences for K-theory of bundles over finite simplicial complexes"};
    app.require_subcommand(1);

    lsseq::JobOptions options;
    std::string input;
    std::string emit = "human";
    std::string convention = "e1";

    for (const char* name : {"cohomology", "group-cohomology", "spectral", "ncp", "check"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--input", input, "job document (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--emit", emit, "report format")->check(CLI::IsMember({"human", "machine"}));
        sub->add_option("--convention", convention, "coboundary sign convention")
            ->check(CLI::IsMember({"classical", "e1"}));
        sub->add_option("--jobs", options.jobs, "worker threads")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : lsseq::kInputError;
    }

    options.command = app.get_subcommands().front()->get_name();
    options.emit = emit == "machine" ? lsseq::Emit::machine : lsseq::Emit::human;
    options.convention = lsseq::parse_convention(convention);

    std::ifstream in(input);
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (!in) {
        std::cerr << "input error: cannot read " << input << '\n';
        return lsseq::kInputError;
    }

    const lsseq::JobResult result = lsseq::run_job(buffer.str(), options);
    std::cout << result.report;
    if (!result.diagnostic.empty()) std::cerr << result.diagnostic << '\n';
    return result.exit_code;
}
