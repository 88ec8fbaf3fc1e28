#include "toric/cli.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using toric::cli::Json;

std::string read_input(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Flags {
    std::string input;
    std::vector<std::uint64_t> chars;
    std::size_t max_states = toric::SearchOptions{}.max_states;
    std::uint64_t seed = 1;
    std::size_t oracle_trials = 100;
    bool text = false;
    std::string verify;
    std::string output;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("input", f.input, "Problem file, or - for stdin")->required();
    cmd->add_option("--char", f.chars, "Characteristic to work in (0 or a prime); repeatable, overrides the file")
        ->take_all()
        ->allow_extra_args(false);
    cmd->add_option("--max-states", f.max_states, "ECI search budget")->capture_default_str();
    cmd->add_option("--seed", f.seed, "Seed for randomized oracles")->capture_default_str();
    cmd->add_option("--oracle-trials", f.oracle_trials, "Trials per prime for the oracle task")->capture_default_str();
    auto* json = cmd->add_flag("--json", "JSON report (default)");
    auto* text = cmd->add_flag("--text", f.text, "Human-readable report");
    json->excludes(text);
    cmd->add_option("--verify-certificate", f.verify, "Re-check a report produced for this problem");
    cmd->add_option("-o,--output", f.output, "Write the report here instead of stdout");
}

int execute(const std::string& subcommand, const Flags& f) {
    using namespace toric::cli;
    const std::string bytes = read_input(f.input);
    ProblemFile problem = parse_problem_text(bytes);

    std::string task = subcommand;
    if (task == "run") {
        if (!problem.task) throw SchemaError("/task", "run needs a task field in the problem file");
        task = *problem.task;
    }

    auto start = std::chrono::steady_clock::now();
    RunResult result;
    if (!f.verify.empty()) {
        Json report;
        try {
            report = Json::parse(read_input(f.verify));
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument(std::string("malformed report: ") + e.what());
        }
        if (report.value("task", "") != task)
            throw std::invalid_argument("report is for task " + report.value("task", "?") + ", not " + task);
        result = verify_report(problem, report);
    } else {
        RunOptions opts;
        opts.characteristics = f.chars;
        opts.max_states = f.max_states;
        opts.seed = f.seed;
        opts.oracle_trials = f.oracle_trials;
        result = run_task(task, problem, opts, bytes);
    }
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    result.report["wall_time_ms"] = static_cast<long long>(ms);

    std::string out = f.text ? render_text(result.report) : result.report.dump(2) + "\n";
    if (f.output.empty()) {
        std::cout << out;
    } else {
        std::ofstream os(f.output, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot write " + f.output);
        os << out;
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Irreducibility and component counts of generic toric complete intersections"};
    app.set_version_flag("--version", toric::cli::tool_version);
    app.require_subcommand(1);

    Flags flags;
    const std::vector<std::pair<const char*, const char*>> commands{
        {"mvol", "Lattice mixed volume of n supports in Z^n"},
        {"khovanskii", "Defect table and the Khovanskii condition"},
        {"components", "Irreducible, empty, or the number of components"},
        {"eci-check", "Search for an irreducibility certificate of an ECI"},
        {"critical-locus", "Irreducibility of a derivative-pattern critical locus"},
        {"oracle", "Finite-field solution counts against the predicted ones"},
        {"run", "Run the task named in the problem file"},
    };
    for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : toric::cli::exit_error;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        return execute(sub, flags);
    } catch (const toric::cli::SchemaError& e) {
        std::cerr << "error: invalid problem at " << (e.pointer().empty() ? "/" : e.pointer()) << ": "
                  << std::string(e.what()).substr(e.pointer().size() + 2) << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return toric::cli::exit_error;
}
