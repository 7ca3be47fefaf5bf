#include "cli_commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>

using namespace superspec::cli;

int main(int argc, char** argv)
{
    CLI::App app{"Spectral sequences of filtered Čech complexes of supersheaves on P^1"};
    app.require_subcommand(1);

    Options opts;
    std::string format = "text";
    std::optional<std::string> out_path;

    using Runner = Result (*)(const Options&);
    const std::map<std::string, std::pair<std::string, Runner>> commands{
        {"validate", {"parse and validate a scenario", run_validate}},
        {"pages", {"print dim E_r^{p,q} grids", run_pages}},
        {"cohomology", {"print dim H^n and dim gr_p H^n", run_cohomology}},
        {"order", {"order of the transition cocycle", run_order}},
        {"verify", {"check d_r = 0 below the order and d_k = mu_k", run_verify}},
    };
    std::map<CLI::App*, Runner> runners;
    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        sub->add_option("scenario", opts.path, "scenario file")->required();
        sub->add_option("--format", format, "text, csv or latex")->check(CLI::IsMember({"text", "csv", "latex"}));
        sub->add_option("--r-max", opts.r_max, "last page to print");
        sub->add_option("--window-override", opts.window_override, "replace the scenario window N");
        sub->add_option("--out", out_path, "write the report here instead of stdout");
        if (name == "validate")
            sub->add_option("--emit-complex", opts.emit_complex, "write the built complex as a raw_complex scenario");
        runners[sub] = entry.second;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    opts.format = *parse_format(format);

    Runner run = nullptr;
    for (const auto& [sub, r] : runners)
        if (sub->parsed())
            run = r;

    Result result = run(opts);
    if (!result.out.empty()) {
        if (out_path) {
            std::ofstream out(*out_path);
            if (!out) {
                std::cerr << "cannot write " << *out_path << "\n";
                return kUsage;
            }
            out << result.out;
        } else {
            std::cout << result.out;
        }
    }
    std::cerr << result.err;
    return result.code;
}
