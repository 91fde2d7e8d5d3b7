#include "livsic/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "livsic/cohomology.hpp"
#include "livsic/counterexample.hpp"

namespace livsic {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("malformed JSON");
    return j;
}

MapDescription map_from_json(const json& j) {
    if (!j.is_object()) throw InputError("map description must be an object");
    if (j.contains("type")) {
        const std::string type = j.at("type").get<std::string>();
        if (type == "beta")
            return make_beta_map(j.at("beta").get<double>(),
                                 j.value("alpha", 0.0));
        if (type == "counterexample")
            return make_counterexample_map(j.value("c", 0.125));
        throw InputError("unknown map type '" + type + "'");
    }
    MapDescription map;
    map.label = j.value("label", "");
    map.lambda = j.at("lambda").get<double>();
    for (const json& bj : j.at("branches")) {
        Branch b;
        const auto dom = bj.at("domain");
        if (!dom.is_array() || dom.size() != 2)
            throw InputError("branch domain must be [l, r]");
        b.lo = dom[0].get<double>();
        b.hi = dom[1].get<double>();
        b.poly.coeffs = bj.at("coeffs").get<std::vector<double>>();
        b.orientation =
            b.poly.derivative(0.5 * (b.lo + b.hi)) >= 0.0 ? +1 : -1;
        map.branches.push_back(std::move(b));
    }
    map.validate();
    return map;
}

std::shared_ptr<const Cocycle> cocycle_from_json(const json& j,
                                                 const MapDescription* map) {
    if (!j.is_object() || !j.contains("type"))
        throw InputError("cocycle description must carry a type");
    const std::string type = j.at("type").get<std::string>();
    if (type == "trig") {
        return std::make_shared<TrigPolynomial>(
            j.value("cos", std::vector<double>{}),
            j.value("sin", std::vector<double>{}));
    }
    if (type == "poly") {
        return std::make_shared<PolynomialCocycle>(
            Polynomial(j.at("coeffs").get<std::vector<double>>()));
    }
    if (type == "coboundary") {
        if (!map)
            throw InputError("coboundary cocycle needs a map to compose with");
        auto chi0 = cocycle_from_json(j.at("chi0"), map);
        return std::make_shared<CoboundaryCocycle>(*map, std::move(chi0));
    }
    throw InputError("unknown cocycle type '" + type + "'");
}

} // namespace

MapDescription parse_map(const std::string& json_text) {
    try {
        return map_from_json(parse_json(json_text));
    } catch (const json::exception& e) {
        throw InputError(std::string("bad map description: ") + e.what());
    }
}

MapDescription load_map(const std::string& path) {
    return parse_map(slurp(path));
}

std::string map_to_json(const MapDescription& map) {
    json j;
    j["label"] = map.label;
    j["lambda"] = map.lambda;
    j["branches"] = json::array();
    for (const Branch& b : map.branches)
        j["branches"].push_back(
            {{"domain", {b.lo, b.hi}}, {"coeffs", b.poly.coeffs}});
    return j.dump(2);
}

std::shared_ptr<const Cocycle> parse_cocycle(const std::string& json_text,
                                             const MapDescription* map) {
    try {
        return cocycle_from_json(parse_json(json_text), map);
    } catch (const json::exception& e) {
        throw InputError(std::string("bad cocycle description: ") + e.what());
    }
}

std::shared_ptr<const Cocycle> load_cocycle(const std::string& path,
                                            const MapDescription* map) {
    return parse_cocycle(slurp(path), map);
}

void write_grid_csv(const GridFunction& f, std::ostream& os) {
    os << "x,value\n";
    for (int i = 0; i < f.n; ++i)
        os << fmt17((i + 0.5) / f.n) << ',' << fmt17(f.values[i]) << '\n';
}

void write_grid_csv(const GridFunction& f, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    write_grid_csv(f, out);
}

GridFunction read_grid_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,value", 0) != 0)
        throw InputError("missing 'x,value' header in " + path);
    GridFunction f;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw InputError("bad CSV row: " + line);
        f.values.push_back(std::stod(line.substr(comma + 1)));
    }
    f.n = static_cast<int>(f.values.size());
    if (f.n == 0) throw InputError("empty grid in " + path);
    return f;
}

std::string solution_diagnostics_json(const CocycleSolution& sol) {
    json j;
    j["a"] = sol.a;
    j["residual_sup"] = sol.residual_sup;
    j["residual_l1"] = sol.residual_l1;
    j["variation"] = sol.variation;
    j["normalization"] = sol.normalization;
    j["method"] = sol.method;
    j["coboundary"] = sol.coboundary;
    return j.dump(2);
}

std::string qpartition_to_json(const QPartition& q) {
    json j;
    j["depth_certified"] = q.depth_certified;
    j["cover_ok"] = q.cover_ok;
    if (q.cover_ok) j["delta"] = q.delta;
    else j["delta"] = nullptr;
    j["fully_certified"] = q.fully_certified;
    j["elements"] = json::array();
    for (const auto& [a, b] : q.elements) j["elements"].push_back({a, b});
    return j.dump(2);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text << '\n';
}

} // namespace livsic
