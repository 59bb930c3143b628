#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "abvp/commands.hpp"

using namespace abvp::cli;

int main(int argc, char** argv) {
    CLI::App app{"annulus-bvp: positive solutions of u'' + lambda q(t) f(t,u) = 0 "
                 "and certified lambda ranges"};
    app.require_subcommand(1);

    std::string file;
    std::string theorem;
    std::string method = "picard";
    std::string sweep_method = "shoot";
    std::string example_id;
    std::string solution_csv;
    std::optional<double> lambda_flag;
    std::optional<std::string> csv_path, svg_path;
    double lambda_from = 1.0, lambda_to = 1.0;
    int steps = 1;
    bool log_spacing = false;

    auto add_file = [&](CLI::App* cmd) {
        cmd->add_option("--file", file, "problem file (JSON)")->required();
    };
    auto add_outputs = [&](CLI::App* cmd) {
        cmd->add_option("--csv", csv_path, "write the CSV here instead of stdout");
        cmd->add_option("--svg", svg_path, "also write an SVG line chart");
    };

    CLI::App* reduce = app.add_subcommand("reduce", "reduce an annulus problem to (0,1)");
    add_file(reduce);
    add_outputs(reduce);

    CLI::App* certify = app.add_subcommand("certify", "evaluate a theorem's lambda range");
    add_file(certify);
    certify->add_option("--theorem", theorem, "1.1 | 1.2 | 1.3 | 1.4 | 4.1 | 4.2")
        ->required();

    CLI::App* eigen = app.add_subcommand("eigen", "first eigenpair of -u'' = lambda q b u");
    add_file(eigen);
    add_outputs(eigen);

    CLI::App* solve = app.add_subcommand("solve", "compute a solution at one lambda");
    add_file(solve);
    solve->add_option("--method", method, "picard | shoot (default picard)");
    solve->add_option("--lambda", lambda_flag, "overrides the file's lambda");
    add_outputs(solve);

    CLI::App* sweepc = app.add_subcommand("sweep", "solve across a lambda grid");
    add_file(sweepc);
    sweepc->add_option("--lambda-from", lambda_from, "first lambda")->required();
    sweepc->add_option("--lambda-to", lambda_to, "last lambda");
    sweepc->add_option("--steps", steps, "number of lambdas (default 1)");
    sweepc->add_flag("--log", log_spacing, "geometric spacing");
    sweepc->add_option("--method", sweep_method, "picard | shoot (default shoot)");
    add_outputs(sweepc);

    CLI::App* examples =
        app.add_subcommand("examples", "replicate a built-in example end to end");
    examples->add_option("id", example_id, "1.1 | 1.2 | 1.3 | 1.4 | 4.1 | 4.2")->required();

    CLI::App* verify = app.add_subcommand("verify", "verify a solution CSV against a problem");
    add_file(verify);
    verify->add_option("--solution", solution_csv, "CSV with columns t,u")->required();
    verify->add_option("--lambda", lambda_flag, "overrides the file's lambda");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (reduce->parsed())
        return cmd_reduce(file, {csv_path, svg_path}, std::cout);
    if (certify->parsed())
        return cmd_certify(file, theorem, std::cout);
    if (eigen->parsed())
        return cmd_eigen(file, {csv_path, svg_path}, std::cout);
    if (solve->parsed())
        return cmd_solve(file, method, lambda_flag, {csv_path, svg_path}, std::cout);
    if (sweepc->parsed())
        return cmd_sweep(file, lambda_from, lambda_to, steps, log_spacing, sweep_method,
                         {csv_path, svg_path}, std::cout);
    if (examples->parsed())
        return cmd_examples(example_id, std::cout);
    if (verify->parsed())
        return cmd_verify(file, solution_csv, lambda_flag, std::cout);
    return kExitUsage;
}
