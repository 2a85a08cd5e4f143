#include "sticky/instance_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace sticky {

namespace {

using json = nlohmann::json;

std::size_t line_at(const std::string& text, std::size_t offset) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') ++line;
    }
    return line;
}

// Line of the k-th object inside the "particles" array.
std::size_t particle_line(const std::string& text, std::size_t k) {
    const auto key = text.find("\"particles\"");
    if (key == std::string::npos) return 0;
    const auto open = text.find('[', key);
    if (open == std::string::npos) return 0;
    int depth = 0;
    std::size_t seen = 0;
    bool in_string = false;
    for (std::size_t i = open + 1; i < text.size(); ++i) {
        const char c = text[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
            continue;
        }
        if (c == '"') in_string = true;
        else if (c == '{') {
            if (depth == 0) {
                if (seen == k) return line_at(text, i);
                ++seen;
            }
            ++depth;
        } else if (c == '}') --depth;
        else if (c == ']' && depth == 0) break;
    }
    return 0;
}

[[noreturn]] void parse_fail(const std::string& text, const std::string& what, std::size_t offset) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_at(text, offset)) + ": " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where,
                    std::size_t line) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": unknown key \"" +
                                                   key + "\" in " + where);
        }
    }
}

double number(const json& obj, const char* key, const std::string& where, std::size_t line) {
    if (!obj.contains(key)) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ": missing \"" + key + "\" in " + where);
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line) + ": \"" + key + "\" in " + where + " must be a number");
    }
    return v.get<double>();
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(text, e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!doc.is_object()) parse_fail(text, "instance must be an object", 0);
    reject_unknown(doc, {"particles", "t_end", "seed", "tolerances"}, "instance", 1);
    if (!doc.contains("particles") || !doc["particles"].is_array()) {
        parse_fail(text, "\"particles\" must be an array", 0);
    }

    ParticleTable table;
    std::size_t k = 0;
    for (const auto& p : doc["particles"]) {
        const std::size_t line = particle_line(text, k);
        const std::string where = "particle " + std::to_string(k);
        if (!p.is_object()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + where +
                                                   " must be an object");
        }
        reject_unknown(p, {"x", "m", "v", "theta"}, where, line);
        table.positions.push_back(number(p, "x", where, line));
        table.masses.push_back(number(p, "m", where, line));
        table.velocities.push_back(number(p, "v", where, line));
        table.accelerations.push_back(number(p, "theta", where, line));
        ++k;
    }

    // Same checks as validate(), repeated here to report the offending line.
    for (std::size_t i = 0; i < table.positions.size(); ++i) {
        const std::string at = "line " + std::to_string(particle_line(text, i)) + ": particle " +
                               std::to_string(i);
        if (!(table.masses[i] > 0.0)) {
            throw Error(ErrorCode::NonPositiveMass, at + " has mass " + format_real(table.masses[i]));
        }
        if (i > 0 && !(table.positions[i - 1] < table.positions[i])) {
            throw Error(ErrorCode::NonIncreasingPositions,
                        at + " is not to the right of particle " + std::to_string(i - 1));
        }
    }
    InstanceFile out{validate(std::move(table)), {}, {}, {}};

    if (doc.contains("t_end")) {
        const auto& t = doc["t_end"];
        if (t.is_string() && (t.get<std::string>() == "inf" || t.get<std::string>() == "infinity")) {
            out.t_end = std::numeric_limits<double>::infinity();
        } else if (t.is_number() && t.get<double>() > 0.0) {
            out.t_end = t.get<double>();
        } else {
            parse_fail(text, "\"t_end\" must be a positive number or \"inf\"", 0);
        }
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) parse_fail(text, "\"seed\" must be a non-negative integer", 0);
        out.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("tolerances")) {
        const auto& tol = doc["tolerances"];
        if (!tol.is_object()) parse_fail(text, "\"tolerances\" must be an object", 0);
        reject_unknown(tol, {"abs", "rel", "event"}, "tolerances", 1);
        if (tol.contains("abs")) out.tolerances.abs = number(tol, "abs", "tolerances", 1);
        if (tol.contains("rel")) out.tolerances.rel = number(tol, "rel", "tolerances", 1);
        if (tol.contains("event")) out.tolerances.event = number(tol, "event", "tolerances", 1);
    }
    return out;
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump_instance(const InitialData& data, std::optional<double> t_end,
                          std::optional<std::uint64_t> seed, std::optional<Tolerances> tolerances) {
    // Written by hand so that numbers keep 17 significant digits.
    std::string out = "{\n  \"particles\": [\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        out += "    {\"x\": " + format_real(data.positions()[i]) +
               ", \"m\": " + format_real(data.masses()[i]) +
               ", \"v\": " + format_real(data.velocities()[i]) +
               ", \"theta\": " + format_real(data.accelerations()[i]) + "}";
        out += (i + 1 < data.size()) ? ",\n" : "\n";
    }
    out += "  ]";
    if (t_end) {
        out += ",\n  \"t_end\": ";
        out += std::isinf(*t_end) ? std::string("\"inf\"") : format_real(*t_end);
    }
    if (seed) out += ",\n  \"seed\": " + std::to_string(*seed);
    if (tolerances) {
        out += ",\n  \"tolerances\": {\"abs\": " + format_real(tolerances->abs) +
               ", \"rel\": " + format_real(tolerances->rel) +
               ", \"event\": " + format_real(tolerances->event) + "}";
    }
    out += "\n}\n";
    return out;
}

}  // namespace sticky
