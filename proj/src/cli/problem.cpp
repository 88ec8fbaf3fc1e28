#include "toric/cli.hpp"

#include <array>
#include <set>

namespace toric::cli {

namespace {

const std::array<const char*, 6> tasks{"mvol", "khovanskii", "components", "eci-check", "critical-locus", "oracle"};

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

void expect_keys(const Json& obj, const std::string& ptr, std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items())
        if (!ok.count(key)) throw SchemaError(child(ptr, key), "unknown field");
}

const Json& require(const Json& obj, const std::string& ptr, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(child(ptr, key), "missing required field");
    return *it;
}

long long integer(const Json& v, const std::string& ptr) {
    if (v.is_number_float()) throw SchemaError(ptr, "floating-point numbers are not accepted");
    if (!v.is_number_integer()) throw SchemaError(ptr, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        throw SchemaError(ptr, "integer out of range");
    return v.get<long long>();
}

std::size_t index(const Json& v, const std::string& ptr) {
    long long x = integer(v, ptr);
    if (x < 0) throw SchemaError(ptr, "expected a non-negative integer");
    return static_cast<std::size_t>(x);
}

const Json& array(const Json& v, const std::string& ptr) {
    if (!v.is_array()) throw SchemaError(ptr, "expected an array");
    return v;
}

std::string scalar_text(const Json& v, const std::string& ptr) {
    if (v.is_string()) {
        auto s = v.get<std::string>();
        try {
            Scalar::parse(Characteristic(), s);
        } catch (const std::exception& e) {
            throw SchemaError(ptr, std::string("bad scalar: ") + e.what());
        }
        return s;
    }
    return std::to_string(integer(v, ptr));
}

}  // namespace

bool is_task(const std::string& name) {
    for (const char* t : tasks)
        if (name == t) return true;
    return false;
}

ProblemFile parse_problem(const Json& doc) {
    if (!doc.is_object()) throw SchemaError("", "problem file must be a JSON object");
    expect_keys(doc, "", {"task", "ambient_rank", "characteristics", "supports", "eci", "pattern"});
    ProblemFile out;

    if (auto it = doc.find("task"); it != doc.end()) {
        if (!it->is_string() || !is_task(it->get<std::string>()))
            throw SchemaError("/task", "expected one of mvol, khovanskii, components, eci-check, critical-locus, oracle");
        out.task = it->get<std::string>();
    }

    out.ambient_rank = index(require(doc, "", "ambient_rank"), "/ambient_rank");

    if (auto it = doc.find("characteristics"); it != doc.end()) {
        array(*it, "/characteristics");
        if (it->empty()) throw SchemaError("/characteristics", "expected at least one characteristic");
        for (std::size_t i = 0; i < it->size(); ++i) {
            auto ptr = child("/characteristics", i);
            std::size_t p = index((*it)[i], ptr);
            try {
                (void)Characteristic(p);
            } catch (const std::exception& e) {
                throw SchemaError(ptr, e.what());
            }
            out.characteristics.push_back(p);
        }
    } else {
        out.characteristics = {0};
    }

    const Json& supports = array(require(doc, "", "supports"), "/supports");
    if (supports.empty()) throw SchemaError("/supports", "expected at least one support");
    for (std::size_t i = 0; i < supports.size(); ++i) {
        auto sptr = child("/supports", i);
        const Json& s = array(supports[i], sptr);
        if (s.empty()) throw SchemaError(sptr, "support must be non-empty");
        std::vector<LatticePoint> points;
        std::set<LatticePoint> seen;
        for (std::size_t j = 0; j < s.size(); ++j) {
            auto pptr = child(sptr, j);
            const Json& p = array(s[j], pptr);
            if (p.size() != out.ambient_rank)
                throw SchemaError(pptr, "point has " + std::to_string(p.size()) + " coordinates, ambient rank is " +
                                            std::to_string(out.ambient_rank));
            LatticePoint pt(out.ambient_rank);
            for (std::size_t k = 0; k < p.size(); ++k) pt[k] = static_cast<long>(integer(p[k], child(pptr, k)));
            if (!seen.insert(pt).second) throw SchemaError(pptr, "duplicate point " + pt.to_string());
            points.push_back(std::move(pt));
        }
        out.supports.emplace_back(out.ambient_rank, std::move(points));
    }

    if (auto it = doc.find("eci"); it != doc.end()) {
        array(*it, "/eci");
        for (std::size_t i = 0; i < it->size(); ++i) {
            auto eptr = child("/eci", i);
            const Json& e = (*it)[i];
            if (!e.is_object()) throw SchemaError(eptr, "expected an object");
            expect_keys(e, eptr, {"support_index", "rows"});
            EciSpec spec;
            spec.support_index = index(require(e, eptr, "support_index"), child(eptr, "support_index"));
            if (spec.support_index >= out.supports.size())
                throw SchemaError(child(eptr, "support_index"), "no support with this index");
            const std::size_t width = out.supports[spec.support_index].size();
            auto rptr = child(eptr, "rows");
            const Json& rows = array(require(e, eptr, "rows"), rptr);
            if (rows.empty()) throw SchemaError(rptr, "expected at least one row");
            for (std::size_t r = 0; r < rows.size(); ++r) {
                auto rowptr = child(rptr, r);
                const Json& row = array(rows[r], rowptr);
                if (row.size() != width)
                    throw SchemaError(rowptr, "row has " + std::to_string(row.size()) + " entries, support has " +
                                                  std::to_string(width) + " points");
                auto& dst = spec.rows.emplace_back();
                for (std::size_t c = 0; c < row.size(); ++c) dst.push_back(scalar_text(row[c], child(rowptr, c)));
            }
            out.eci.push_back(std::move(spec));
        }
    }

    if (auto it = doc.find("pattern"); it != doc.end()) {
        const Json& p = *it;
        if (!p.is_object()) throw SchemaError("/pattern", "expected an object");
        const Json& kind = require(p, "/pattern", "kind");
        if (kind == "tower") {
            expect_keys(p, "/pattern", {"kind", "variable", "order"});
            TowerPattern t{index(require(p, "/pattern", "variable"), "/pattern/variable"),
                           index(require(p, "/pattern", "order"), "/pattern/order")};
            if (t.variable >= out.ambient_rank) throw SchemaError("/pattern/variable", "variable index out of range");
            out.pattern = t;
        } else if (kind == "gradient") {
            expect_keys(p, "/pattern", {"kind", "x", "y"});
            GradientPattern g{index(require(p, "/pattern", "x"), "/pattern/x"),
                              index(require(p, "/pattern", "y"), "/pattern/y")};
            if (g.x >= out.ambient_rank) throw SchemaError("/pattern/x", "variable index out of range");
            if (g.y >= out.ambient_rank) throw SchemaError("/pattern/y", "variable index out of range");
            if (g.x == g.y) throw SchemaError("/pattern/y", "gradient needs two distinct variables");
            out.pattern = g;
        } else {
            throw SchemaError("/pattern/kind", "expected \"tower\" or \"gradient\"");
        }
    }
    return out;
}

ProblemFile parse_problem_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_problem(doc);
}

std::string input_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    return out;
}

}  // namespace toric::cli
