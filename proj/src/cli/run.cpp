#include "toric/cli.hpp"

#include "toric/khovanskii.hpp"
#include "toric/oracle.hpp"
#include "toric/polytope.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace toric::cli {

namespace {

Json integer_json(const Integer& v) { return v.get_str(); }

Json point_json(const LatticePoint& p) {
    Json out = Json::array();
    for (const auto& c : p.coords()) {
        if (c.fits_slong_p())
            out.push_back(c.get_si());
        else
            out.push_back(c.get_str());
    }
    return out;
}

Json subset_json(Subset s) {
    Json out = Json::array();
    for (std::size_t i : s.members()) out.push_back(i + 1);
    return out;
}

Json scalar_matrix_json(const ScalarMatrix& m) {
    Json out = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(x.to_string());
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Subset> canonical_subsets(std::size_t m) {
    std::vector<Subset> out;
    for (std::uint32_t mask = 1; mask <= Subset::all(m).mask(); ++mask) out.emplace_back(mask);
    std::sort(out.begin(), out.end(), [](Subset a, Subset b) { return canonical_less(a, b); });
    return out;
}

Json defect_table(const DefectReport& report) {
    Json out = Json::array();
    for (Subset s : canonical_subsets(report.family_size()))
        out.push_back(Json{{"subset", subset_json(s)}, {"defect", report[s]}});
    return out;
}

SupportFamily family_of(const ProblemFile& problem) {
    if (problem.supports.size() > SupportFamily::max_size)
        throw SchemaError("/supports", "at most " + std::to_string(SupportFamily::max_size) + " supports are supported");
    return SupportFamily(problem.ambient_rank, problem.supports);
}

Json collection_json(const AdjustedCollection& c, std::size_t support_index, const PointSet& support) {
    Json deltas = Json::array(), points = Json::array();
    for (const auto& delta : c.deltas) {
        deltas.push_back(delta);
        Json pts = Json::array();
        for (std::size_t col : delta) pts.push_back(point_json(support[col]));
        points.push_back(std::move(pts));
    }
    return Json{{"support_index", support_index}, {"order", c.order},        {"pivots", c.pivots},
                {"transform", scalar_matrix_json(c.transform)}, {"deltas", deltas}, {"delta_points", points}};
}

std::vector<std::size_t> matrix_support_indices(const std::string& task, const ProblemFile& problem) {
    if (task == "critical-locus") return {0};
    std::vector<std::size_t> out;
    for (const auto& e : problem.eci) out.push_back(e.support_index);
    return out;
}

Json verdict_entry(std::uint64_t p, const Verdict& v, const std::vector<std::size_t>& support_indices,
                   const std::vector<CoefficientMatrix>& matrices) {
    Json out{{"characteristic", p}, {"verdict", v.tag()}};
    if (const auto* inc = v.inconclusive()) {
        out["explored_states"] = inc->explored_states;
        out["reason"] = inc->reason;
    }
    if (v.certificate()) {
        Json colls = Json::array();
        const auto& cs = v.certificate()->collections;
        for (std::size_t i = 0; i < cs.size(); ++i)
            colls.push_back(collection_json(cs[i], support_indices[i], matrices[i].support()));
        out["certificate"] = Json{{"collections", colls}};
    }
    return out;
}

std::vector<std::uint64_t> characteristics_for(const ProblemFile& problem, const RunOptions& options) {
    auto chars = options.characteristics.empty() ? problem.characteristics : options.characteristics;
    for (auto p : chars) (void)Characteristic(p);
    return chars;
}

std::string overall_verdict(const Json& entries) {
    std::string tag;
    for (const auto& e : entries) {
        auto t = e["verdict"].get<std::string>();
        if (tag.empty())
            tag = t;
        else if (tag != t)
            return "mixed";
    }
    return tag;
}

RunResult run_mvol(const ProblemFile& problem) {
    if (problem.supports.size() != problem.ambient_rank)
        throw SchemaError("/supports", "mvol needs exactly ambient_rank supports, got " +
                                           std::to_string(problem.supports.size()));
    Json volumes = Json::array();
    for (const auto& s : problem.supports) volumes.push_back(integer_json(lattice_volume(s)));
    Json result{{"mixed_volume", integer_json(mixed_volume(problem.supports))}, {"volumes", volumes}};
    return {exit_definitive, result};
}

RunResult run_khovanskii(const ProblemFile& problem) {
    auto family = family_of(problem);
    DefectReport report(family);
    auto k = khovanskii_condition(family);
    Json result{{"satisfied", k.satisfied}, {"witness", k.witness ? subset_json(*k.witness) : Json(nullptr)},
                {"min_defect", report.min_defect()}, {"defects", defect_table(report)}};
    return {exit_definitive, result};
}

RunResult run_components(const ProblemFile& problem) {
    auto family = family_of(problem);
    DefectReport report(family);
    Verdict v = component_count(family);
    Json result{{"verdict", v.tag()}};
    if (const auto* c = v.components()) {
        result["N"] = integer_json(c->count);
        result["J0"] = subset_json(c->j0);
        Json basis = Json::array();
        for (const auto& b : c->lattice.basis()) basis.push_back(point_json(b));
        result["lattice_basis"] = basis;
    }
    result["defects"] = defect_table(report);
    return {exit_definitive, result};
}

RunResult run_eci(const std::string& task, const ProblemFile& problem, const RunOptions& options) {
    if (task == "eci-check" && problem.eci.empty()) throw SchemaError("/eci", "eci-check needs at least one entry");
    if (task == "critical-locus") {
        if (!problem.pattern) throw SchemaError("/pattern", "critical-locus needs a pattern");
        if (problem.supports.size() != 1) throw SchemaError("/supports", "critical-locus needs exactly one support");
    }
    const auto indices = matrix_support_indices(task, problem);
    Json entries = Json::array();
    int code = exit_definitive;
    for (std::uint64_t p : characteristics_for(problem, options)) {
        Characteristic ch(p);
        auto matrices = build_matrices(task, problem, ch);
        SearchStats stats;
        Verdict v = Verdict(Inconclusive{});
        try {
            v = search_irreducibility_certificate(matrices, SearchOptions{options.max_states}, &stats);
        } catch (const DependentRows& e) {
            throw std::invalid_argument("characteristic " + std::to_string(p) + ": " + e.what());
        }
        std::string method = "search";
        if (v.is_inconclusive() && task == "critical-locus" && std::holds_alternative<TowerPattern>(*problem.pattern)) {
            const auto& t = std::get<TowerPattern>(*problem.pattern);
            Verdict s = auto_certificate_stratified(matrices[0], degree_label(problem.supports[0], t.variable, ch));
            if (s.is_irreducible()) {
                v = std::move(s);
                method = "stratified";
            }
        }
        Json entry = verdict_entry(p, v, indices, matrices);
        Json ordered{{"characteristic", entry["characteristic"]}, {"verdict", entry["verdict"]}};
        if (task == "critical-locus") {
            ordered["method"] = method;
            ordered["rows"] = scalar_matrix_json(matrices[0].rows());
        }
        ordered["explored_states"] = stats.explored_states;
        ordered["distinct_collections"] = stats.distinct_collections;
        if (entry.contains("reason")) ordered["reason"] = entry["reason"];
        if (entry.contains("certificate")) ordered["certificate"] = entry["certificate"];
        if (v.is_inconclusive()) code = exit_inconclusive;
        entries.push_back(std::move(ordered));
    }
    Json result{{"verdict", overall_verdict(entries)}, {"characteristics", entries}};
    return {code, result};
}

std::vector<std::uint64_t> oracle_primes(const ProblemFile& problem, const RunOptions& options) {
    std::vector<std::uint64_t> out;
    for (auto p : characteristics_for(problem, options))
        if (p != 0) out.push_back(p);
    if (out.empty()) out = {101, 103, 107};
    return out;
}

Json histogram(const std::vector<std::size_t>& counts) {
    std::map<std::size_t, std::size_t> h;
    for (auto c : counts) ++h[c];
    Json out = Json::array();
    for (auto [value, times] : h) out.push_back(Json{{"count", value}, {"trials", times}});
    return out;
}

RunResult run_oracle(const ProblemFile& problem, const RunOptions& options) {
    const auto& supports = problem.supports;
    const std::size_t n = problem.ambient_rank, m = supports.size();
    Json result = Json::object();
    Json runs = Json::array();
    if (n == 1 && m == 1) {
        result["method"] = "roots";
        Integer expected = lattice_volume(supports[0]);
        result["expected"] = integer_json(expected);
        for (auto p : oracle_primes(problem, options)) {
            auto counts = oracle::root_count_1d(supports[0], p, options.oracle_trials, options.seed);
            std::size_t hits = std::count_if(counts.begin(), counts.end(), [&](std::size_t c) { return expected == c; });
            runs.push_back(Json{{"prime", p}, {"trials", counts.size()}, {"matches", hits}, {"counts", histogram(counts)}});
        }
    } else if (n == 2 && m == 2) {
        result["method"] = "resultant";
        Integer expected = mixed_volume(supports);
        result["expected"] = integer_json(expected);
        for (auto p : oracle_primes(problem, options)) {
            auto stats = oracle::resultant_count_2d(supports[0], supports[1], p, options.oracle_trials, options.seed);
            std::vector<std::size_t> counts;
            for (const auto& c : stats.counts)
                if (c) counts.push_back(*c);
            std::size_t hits = std::count_if(counts.begin(), counts.end(), [&](std::size_t c) { return expected == c; });
            runs.push_back(Json{{"prime", p},
                                {"trials", stats.counts.size()},
                                {"degenerate", stats.degenerate()},
                                {"matches", hits},
                                {"counts", histogram(counts)}});
        }
    } else {
        result["method"] = "sampler";
        result["expected"] = m == n ? Json(integer_json(bkk_count(supports))) : Json(nullptr);
        for (auto p : oracle_primes(problem, options)) {
            auto stats = oracle::sample_common_solutions(supports, p, options.oracle_trials, options.seed);
            Json run{{"prime", p}, {"trials", stats.counts.size()}, {"zero_count_trials", stats.trials_with_zero_count()}};
            run["counts"] = histogram(stats.counts);
            runs.push_back(std::move(run));
        }
    }
    result["runs"] = runs;

    if (m <= SupportFamily::max_size) {
        auto family = family_of(problem);
        DefectReport report(family);
        bool agree = true;
        for (Subset s : canonical_subsets(m))
            if (report[s] != oracle::defect_bruteforce(supports, s.mask())) agree = false;
        result["defects_agree"] = agree;
    }
    return {exit_definitive, result};
}

CoefficientMatrix parse_eci_matrix(const ProblemFile& problem, std::size_t i, Characteristic ch) {
    const auto& spec = problem.eci[i];
    std::vector<Row> rows;
    for (std::size_t r = 0; r < spec.rows.size(); ++r) {
        Row row;
        for (std::size_t c = 0; c < spec.rows[r].size(); ++c) {
            try {
                row.push_back(Scalar::parse(ch, spec.rows[r][c]));
            } catch (const std::exception& e) {
                throw SchemaError("/eci/" + std::to_string(i) + "/rows/" + std::to_string(r) + "/" + std::to_string(c),
                                  e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    return CoefficientMatrix(problem.supports[spec.support_index], ch, std::move(rows));
}

ScalarMatrix parse_transform(const Json& t, Characteristic ch) {
    ScalarMatrix out;
    for (const auto& row : t) {
        Row r;
        for (const auto& x : row) r.push_back(Scalar::parse(ch, x.get<std::string>()));
        out.push_back(std::move(r));
    }
    return out;
}

Json verify_eci(const ProblemFile& problem, const Json& report, bool& all_valid) {
    const std::string task = report.at("task").get<std::string>();
    Json checked = Json::array();
    for (const auto& entry : report.at("result").at("characteristics")) {
        std::uint64_t p = entry.at("characteristic").get<std::uint64_t>();
        Json out{{"characteristic", p}, {"verdict", entry.at("verdict")}};
        if (!entry.contains("certificate")) {
            out["valid"] = entry.at("verdict") == "inconclusive";
            out["reason"] = out["valid"].get<bool>() ? "no certificate claimed" : "verdict without certificate";
            if (!out["valid"].get<bool>()) all_valid = false;
            checked.push_back(std::move(out));
            continue;
        }
        Characteristic ch(p);
        auto matrices = build_matrices(task, problem, ch);
        const auto expected_indices = matrix_support_indices(task, problem);
        EciCertificate cert;
        std::string reason;
        const auto& colls = entry.at("certificate").at("collections");
        if (colls.size() != matrices.size()) reason = "certificate has the wrong number of collections";
        for (std::size_t i = 0; reason.empty() && i < colls.size(); ++i) {
            const auto& c = colls[i];
            if (c.at("support_index").get<std::size_t>() != expected_indices[i]) {
                reason = "collection " + std::to_string(i) + " names the wrong support";
                break;
            }
            AdjustedCollection ac;
            ac.transform = parse_transform(c.at("transform"), ch);
            ac.deltas = c.at("deltas").get<std::vector<std::vector<std::size_t>>>();
            cert.collections.push_back(std::move(ac));
        }
        if (reason.empty()) {
            auto check = verify_certificate(matrices, cert);
            if (!check.valid) reason = check.reason;
        }
        out["valid"] = reason.empty();
        if (!reason.empty()) {
            out["reason"] = reason;
            all_valid = false;
        }
        checked.push_back(std::move(out));
    }
    return checked;
}

Json verify_components(const ProblemFile& problem, const Json& report, bool& all_valid) {
    auto family = family_of(problem);
    const Json& r = report.at("result");
    Verdict fresh = component_count(family);
    Json out{{"verdict", r.at("verdict")}};
    std::string reason;
    if (r.at("verdict") != fresh.tag()) {
        reason = "verdict differs from a fresh computation (" + fresh.tag() + ")";
    } else if (const auto* c = fresh.components()) {
        std::vector<std::size_t> members;
        for (const auto& x : r.at("J0")) {
            auto k = x.get<std::size_t>();
            if (k == 0 || k > family.size()) throw std::invalid_argument("J0 member out of range");
            members.push_back(k - 1);
        }
        Subset j0 = Subset::of(members);
        std::vector<LatticePoint> gens;
        for (const auto& b : r.at("lattice_basis")) {
            LatticePoint pt(problem.ambient_rank);
            if (b.size() != problem.ambient_rank) throw std::invalid_argument("lattice basis vector of wrong length");
            for (std::size_t k = 0; k < b.size(); ++k)
                pt[k] = b[k].is_string() ? Integer(b[k].get<std::string>()) : Integer(b[k].get<long>());
            gens.push_back(std::move(pt));
        }
        Sublattice l(problem.ambient_rank, gens);
        DefectReport defects(family);
        if (!(j0 == c->j0))
            reason = "J0 differs from a fresh computation";
        else if (defects[j0] != 0)
            reason = "J0 has non-zero defect";
        else if (l.rank() != j0.size() || !l.is_saturated())
            reason = "lattice is not saturated of rank |J0|";
        else if (!(l == c->lattice))
            reason = "lattice differs from the span of the J0 differences";
        else if (component_mixed_volume(family, j0, l) != Integer(r.at("N").get<std::string>()))
            reason = "N differs from MVol_L of the J0 supports";
    }
    out["valid"] = reason.empty();
    if (!reason.empty()) {
        out["reason"] = reason;
        all_valid = false;
    }
    return out;
}

}  // namespace

std::vector<CoefficientMatrix> build_matrices(const std::string& task, const ProblemFile& problem, Characteristic ch) {
    std::vector<CoefficientMatrix> out;
    if (task == "eci-check") {
        for (std::size_t i = 0; i < problem.eci.size(); ++i) out.push_back(parse_eci_matrix(problem, i, ch));
    } else if (task == "critical-locus") {
        if (!problem.pattern) throw SchemaError("/pattern", "critical-locus needs a pattern");
        out.push_back(encode_pattern(problem.supports.at(0), DerivativePattern{*problem.pattern, ch}));
    } else {
        throw std::invalid_argument("task " + task + " has no coefficient matrices");
    }
    return out;
}

RunResult run_task(const std::string& task, const ProblemFile& problem, const RunOptions& options,
                   const std::string& input_bytes) {
    if (!is_task(task)) throw std::invalid_argument("unknown task '" + task + "'");
    if (problem.task && *problem.task != task)
        throw SchemaError("/task", "file is for task " + *problem.task + ", not " + task);

    RunResult body;
    if (task == "mvol")
        body = run_mvol(problem);
    else if (task == "khovanskii")
        body = run_khovanskii(problem);
    else if (task == "components")
        body = run_components(problem);
    else if (task == "oracle")
        body = run_oracle(problem, options);
    else
        body = run_eci(task, problem, options);

    Json report{{"tool", "toric"},
                {"version", tool_version},
                {"task", task},
                {"input_hash", input_hash(input_bytes)},
                {"seed", options.seed},
                {"result", std::move(body.report)}};
    return {body.exit_code, std::move(report)};
}

RunResult verify_report(const ProblemFile& problem, const Json& report) {
    if (!report.is_object() || !report.contains("task") || !report.contains("result"))
        throw std::invalid_argument("not a report: missing task or result");
    const std::string task = report.at("task").get<std::string>();
    bool valid = true;
    Json out{{"tool", "toric"}, {"version", tool_version}, {"task", "verify-certificate"}, {"report_task", task}};
    try {
        if (task == "eci-check" || task == "critical-locus") {
            out["checked"] = verify_eci(problem, report, valid);
        } else if (task == "components") {
            out["checked"] = Json::array({verify_components(problem, report, valid)});
        } else if (task == "mvol") {
            bool same = report.at("result").at("mixed_volume").get<std::string>() ==
                        mixed_volume(problem.supports).get_str();
            out["checked"] = Json::array({Json{{"mixed_volume", report.at("result").at("mixed_volume")}, {"valid", same}}});
            valid = same;
        } else if (task == "khovanskii") {
            bool same = report.at("result").at("satisfied").get<bool>() ==
                        khovanskii_condition(family_of(problem)).satisfied;
            out["checked"] = Json::array({Json{{"satisfied", report.at("result").at("satisfied")}, {"valid", same}}});
            valid = same;
        } else {
            throw std::invalid_argument("reports of task " + task + " carry nothing to verify");
        }
    } catch (const Json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
    out["valid"] = valid;
    return {valid ? exit_definitive : exit_error, std::move(out)};
}

std::string render_text(const Json& report) {
    std::ostringstream os;
    os << report.value("tool", "toric") << ' ' << report.value("version", "") << "  task " << report.value("task", "");
    if (report.contains("input_hash")) os << "  input " << report["input_hash"].get<std::string>();
    os << '\n';
    auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (report.contains("result")) {
        const Json& r = report["result"];
        for (const auto& [key, value] : r.items()) {
            if (key == "characteristics" || key == "runs") {
                for (const auto& e : value) {
                    os << "  -";
                    for (const auto& [k, v] : e.items()) {
                        if (k == "certificate" || k == "rows" || k == "counts") continue;
                        os << ' ' << k << '=' << scalar(v);
                    }
                    os << '\n';
                    if (e.contains("certificate"))
                        for (const auto& c : e["certificate"]["collections"])
                            os << "      support " << c["support_index"].get<std::size_t>()
                               << " deltas " << c["delta_points"].dump() << '\n';
                }
            } else if (key == "defects") {
                os << "defects:\n";
                for (const auto& d : value) os << "  " << d["subset"].dump() << ' ' << d["defect"].dump() << '\n';
            } else {
                os << key << ": " << scalar(value) << '\n';
            }
        }
    }
    if (report.contains("checked")) {
        for (const auto& c : report["checked"]) os << "  - " << c.dump() << '\n';
        os << "valid: " << (report.value("valid", false) ? "true" : "false") << '\n';
    }
    if (report.contains("wall_time_ms")) os << "wall time: " << report["wall_time_ms"].dump() << " ms\n";
    return os.str();
}

}  // namespace toric::cli
