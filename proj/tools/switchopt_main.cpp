#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "switchopt/json_io.hpp"

namespace {

using switchopt::GridSpec;

struct GridArg {
    GridSpec spec;
    bool set = false;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    std::stringstream ss(s);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3 && parts.size() != 4)
        throw CLI::ValidationError("--grid", "expected MIN:MAX:N[:log]");
    try {
        g.xmin = std::stod(parts[0]);
        g.xmax = std::stod(parts[1]);
        g.points = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--grid", "expected MIN:MAX:N[:log]");
    }
    g.log_spaced = false;
    if (parts.size() == 4) {
        if (parts[3] == "log")
            g.log_spaced = true;
        else if (parts[3] == "lin")
            g.log_spaced = false;
        else
            throw CLI::ValidationError("--grid", "spacing must be log or lin");
    }
    return g;
}

nlohmann::json read_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw switchopt::InvalidProblem("cannot open input file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw switchopt::InvalidProblem(std::string("bad JSON: ") + e.what());
    }
    return j;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw switchopt::InvalidProblem("cannot open output file: " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal open/close switching with abandonment: closed-form "
                 "solver and verification tools"};
    app.require_subcommand(1);

    std::string input, output, grid_str, csv_path;
    std::uint64_t paths = 100000, seed = 0x9e3779b97f4a7c15ULL;
    double dt = 1e-3, horizon = 0.0, x0 = 1.0;
    int z = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "problem JSON file")->required();
        cmd->add_option("--output", output, "output file (default stdout)");
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "classify an instance");
    add_common(classify_cmd);
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve the free boundaries");
    add_common(solve_cmd);
    CLI::App* sample_cmd = app.add_subcommand("sample", "sample the value functions as CSV");
    add_common(sample_cmd);
    sample_cmd->add_option("--grid", grid_str, "MIN:MAX:N[:log]");
    CLI::App* verify_cmd = app.add_subcommand("verify", "smooth-pasting and variational-inequality audit");
    add_common(verify_cmd);
    verify_cmd->add_option("--grid", grid_str, "MIN:MAX:N[:log]");
    verify_cmd->add_option("--csv", csv_path, "write per-point clause values as CSV");
    CLI::App* sim_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of the strategy value");
    add_common(sim_cmd);
    sim_cmd->add_option("--paths", paths, "number of paths");
    sim_cmd->add_option("--dt", dt, "time step");
    sim_cmd->add_option("--seed", seed, "master seed");
    sim_cmd->add_option("--horizon", horizon, "time cap (default 40/r)");
    sim_cmd->add_option("--z", z, "starting mode (0 or 1)")->check(CLI::Range(0, 1));
    sim_cmd->add_option("--x0", x0, "starting state");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const nlohmann::json in = read_input(input);
        const bool wrapped = in.is_object() && in.contains("problem");
        const switchopt::ProblemData data =
            switchopt::problem_from_json(wrapped ? in.at("problem") : in);

        if (app.got_subcommand(classify_cmd)) {
            const auto cl = switchopt::classify(data);
            write_output(output, switchopt::to_json(cl).dump(2));
        } else if (app.got_subcommand(solve_cmd)) {
            const auto sol = switchopt::build_solution(data);
            write_output(output, switchopt::to_json(sol).dump(2));
        } else if (app.got_subcommand(sample_cmd)) {
            const auto sol = switchopt::build_solution(data);
            GridSpec g = grid_str.empty() ? switchopt::default_grid(sol, 100)
                                          : parse_grid(grid_str);
            write_output(output, switchopt::sample_csv(sol, g));
        } else if (app.got_subcommand(verify_cmd)) {
            const auto sol = switchopt::build_solution(data);
            GridSpec g = grid_str.empty() ? switchopt::default_grid(sol)
                                          : parse_grid(grid_str);
            const auto hjb = switchopt::check_hjb(sol, g);
            const auto c1 = switchopt::check_c1(sol);
            nlohmann::json j;
            j["case"] = switchopt::to_string(sol.case_id);
            j["boundaries"] = switchopt::to_json(sol.boundaries);
            j["hjb"] = switchopt::to_json(hjb);
            j["c1"] = switchopt::to_json(c1);
            j["pass"] = hjb.pass && c1.pass;
            if (wrapped && in.contains("boundaries")) {
                const auto given = switchopt::boundaries_from_json(in.at("boundaries"));
                const auto& got = sol.boundaries;
                auto same = [](const std::optional<double>& a,
                               const std::optional<double>& b) {
                    return a.has_value() == b.has_value() &&
                           (!a || *a == *b);
                };
                j["input_boundaries_match"] =
                    same(given.zeta, got.zeta) && same(given.delta, got.delta) &&
                    same(given.gamma, got.gamma) && same(given.beta, got.beta) &&
                    same(given.alpha, got.alpha);
            }
            if (!csv_path.empty()) write_output(csv_path, switchopt::hjb_csv(hjb));
            write_output(output, j.dump(2));
        } else if (app.got_subcommand(sim_cmd)) {
            const auto sol = switchopt::build_solution(data);
            switchopt::McConfig cfg;
            cfg.paths = paths;
            cfg.dt = dt;
            cfg.seed = seed;
            cfg.horizon = horizon;
            const auto res = switchopt::simulate_value(sol, z, x0, cfg);
            nlohmann::json j = switchopt::to_json(res);
            j["w"] = switchopt::eval(sol, z, x0, 0);
            write_output(output, j.dump(2));
        }
        return 0;
    } catch (const switchopt::RootNotBracketed& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const switchopt::InvalidProblem& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const switchopt::InvalidConfig& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const switchopt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
