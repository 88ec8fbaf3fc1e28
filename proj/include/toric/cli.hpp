#pragma once

// Problem files in, reports out. The executable in tools/ is a thin CLI11
// wrapper around run_task and verify_report.

#include "toric/critical.hpp"
#include "toric/eci.hpp"
#include "toric/lattice.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "0.1.0";

/// Exit codes.
inline constexpr int exit_definitive = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_inconclusive = 2;

/// Problem file validation error; `pointer` is a JSON pointer into the input.
class SchemaError : public std::invalid_argument {
public:
    SchemaError(std::string pointer, const std::string& message)
        : std::invalid_argument(pointer + ": " + message), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

/// Rows of an ECI as written in the file; parsed per characteristic.
struct EciSpec {
    std::size_t support_index = 0;
    std::vector<std::vector<std::string>> rows;
};

struct ProblemFile {
    std::optional<std::string> task;
    std::size_t ambient_rank = 0;
    std::vector<std::uint64_t> characteristics;
    std::vector<PointSet> supports;
    std::vector<EciSpec> eci;
    std::optional<std::variant<TowerPattern, GradientPattern>> pattern;
};

bool is_task(const std::string& name);

/// Validates and converts. Throws SchemaError.
ProblemFile parse_problem(const Json& doc);
/// Parses text first; malformed JSON is reported at pointer "".
ProblemFile parse_problem_text(const std::string& text);

struct RunOptions {
    /// Overrides the file's characteristics when non-empty.
    std::vector<std::uint64_t> characteristics;
    std::size_t max_states = SearchOptions{}.max_states;
    std::uint64_t seed = 1;
    std::size_t oracle_trials = 100;
};

struct RunResult {
    int exit_code = exit_definitive;
    Json report;
};

/// 64-bit FNV-1a of the raw input, as 16 hex digits.
std::string input_hash(const std::string& bytes);

/// Runs `task` on the problem. The report carries everything except the
/// wall time, which the caller appends. Throws SchemaError for inconsistent
/// input and std::invalid_argument for other usage errors.
RunResult run_task(const std::string& task, const ProblemFile& problem, const RunOptions& options,
                   const std::string& input_bytes);

/// The coefficient matrices of an eci-check or critical-locus problem in
/// characteristic ch, in input order.
std::vector<CoefficientMatrix> build_matrices(const std::string& task, const ProblemFile& problem, Characteristic ch);

/// Re-checks a report produced for `problem`: certificates are rebuilt from
/// the problem data and verified, component counts are recomputed from J0
/// and L. Returns a report of the check; exit code 0 iff everything holds.
RunResult verify_report(const ProblemFile& problem, const Json& report);

/// Human-readable rendering of a report.
std::string render_text(const Json& report);

}  // namespace toric::cli
