#include "ocs/io.hpp"

#include <json.hpp>

#include <sstream>

namespace ocs {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw parse_error(what); }

void reject_floats(const json& j, const std::string& path) {
    if (j.is_number_float()) fail("float literal at " + path + "; rationals must be strings");
    if (j.is_object())
        for (auto it = j.begin(); it != j.end(); ++it)
            reject_floats(it.value(), path + "." + it.key());
    if (j.is_array())
        for (std::size_t i = 0; i < j.size(); ++i)
            reject_floats(j[i], path + "[" + std::to_string(i) + "]");
}

Rat rat_at(const json& j, const std::string& path) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
    fail("expected rational string at " + path);
}

RVec vec_at(const json& j, const std::string& path, std::size_t dim) {
    if (!j.is_array()) fail("expected vector array at " + path);
    if (j.size() != dim)
        fail("vector at " + path + " has " + std::to_string(j.size()) + " entries, expected " +
             std::to_string(dim));
    RVec v(dim);
    for (std::size_t i = 0; i < dim; ++i)
        v[i] = rat_at(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

json vec_json(const RVec& v) {
    json a = json::array();
    for (const Rat& r : v) a.push_back(rat_str(r));
    return a;
}

}  // namespace

RVec parse_vector(const std::string& text) {
    std::vector<Rat> entries;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) entries.push_back(parse_rat(token));
    if (entries.empty()) fail("empty vector literal");
    return RVec(entries);
}

Instance parse_instance(const std::string& text, const std::string& name) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Map the byte offset to a line number for the diagnostic.
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        fail("invalid JSON at line " + std::to_string(line) + ": " + e.what());
    }
    reject_floats(j, "$");
    if (!j.is_object()) fail("top level must be an object");
    if (!j.contains("format") || !j["format"].is_number_integer() || j["format"] != 1)
        fail("missing or unsupported \"format\" (expected 1)");
    if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long>() < 1)
        fail("missing or invalid \"dim\"");
    const std::size_t dim = j["dim"].get<std::size_t>();

    std::vector<RVec> gens;
    if (j.contains("cone")) {
        const json& c = j["cone"];
        if (!c.is_object() || !c.contains("generators") || !c["generators"].is_array())
            fail("\"cone\" must hold a \"generators\" array");
        for (std::size_t i = 0; i < c["generators"].size(); ++i)
            gens.push_back(
                vec_at(c["generators"][i], "$.cone.generators[" + std::to_string(i) + "]", dim));
    }

    if (!j.contains("seminorms") || !j["seminorms"].is_array() || j["seminorms"].empty())
        fail("missing or empty \"seminorms\" array");
    std::vector<PolyhedralSeminorm> seminorms;
    for (std::size_t k = 0; k < j["seminorms"].size(); ++k) {
        const json& sj = j["seminorms"][k];
        std::string path = "$.seminorms[" + std::to_string(k) + "]";
        if (!sj.is_object() || !sj.contains("name") || !sj["name"].is_string() ||
            !sj.contains("rows") || !sj["rows"].is_array())
            fail(path + " must hold \"name\" and \"rows\"");
        std::vector<RVec> rows;
        for (std::size_t i = 0; i < sj["rows"].size(); ++i)
            rows.push_back(vec_at(sj["rows"][i], path + ".rows[" + std::to_string(i) + "]", dim));
        seminorms.emplace_back(sj["name"].get<std::string>(), std::move(rows), dim);
    }

    Instance inst{name.empty() && j.contains("name") && j["name"].is_string()
                      ? j["name"].get<std::string>()
                      : name,
                  CalibratedSpace::make(dim, PolyCone(dim, gens), std::move(seminorms)),
                  {},
                  {},
                  {}};

    if (j.contains("functionals")) {
        for (auto it = j["functionals"].begin(); it != j["functionals"].end(); ++it)
            inst.functionals.emplace(it.key(),
                                     vec_at(it.value(), "$.functionals." + it.key(), dim));
    }
    if (j.contains("subspaces")) {
        for (auto it = j["subspaces"].begin(); it != j["subspaces"].end(); ++it) {
            const json& rows = it.value();
            std::string path = "$.subspaces." + it.key();
            if (!rows.is_array() || rows.empty()) fail(path + " must be a nonempty row array");
            RMat basis(0, dim);
            for (std::size_t i = 0; i < rows.size(); ++i)
                basis.append_row(vec_at(rows[i], path + "[" + std::to_string(i) + "]", dim));
            inst.subspaces.emplace(it.key(), Subspace(basis));
        }
    }
    if (j.contains("order_units")) {
        for (auto it = j["order_units"].begin(); it != j["order_units"].end(); ++it)
            inst.order_units.emplace(it.key(),
                                     vec_at(it.value(), "$.order_units." + it.key(), dim));
    }
    return inst;
}

std::string serialize_instance(const Instance& inst) {
    json j;
    j["format"] = 1;
    j["dim"] = inst.space.dim();
    if (!inst.name.empty()) j["name"] = inst.name;
    json gens = json::array();
    for (const RVec& g : inst.space.cone().generators()) gens.push_back(vec_json(g));
    j["cone"]["generators"] = gens;
    json sems = json::array();
    for (const PolyhedralSeminorm& p : inst.space.seminorms()) {
        json rows = json::array();
        for (const RVec& r : p.rows()) rows.push_back(vec_json(r));
        sems.push_back(json{{"name", p.name()}, {"rows", rows}});
    }
    j["seminorms"] = sems;
    if (!inst.functionals.empty()) {
        json fs = json::object();
        for (const auto& [label, f] : inst.functionals) fs[label] = vec_json(f);
        j["functionals"] = fs;
    }
    if (!inst.subspaces.empty()) {
        json ss = json::object();
        for (const auto& [label, sub] : inst.subspaces) {
            json rows = json::array();
            for (std::size_t i = 0; i < sub.basis().nrows(); ++i)
                rows.push_back(vec_json(sub.basis().row(i)));
            ss[label] = rows;
        }
        j["subspaces"] = ss;
    }
    if (!inst.order_units.empty()) {
        json us = json::object();
        for (const auto& [label, e] : inst.order_units) us[label] = vec_json(e);
        j["order_units"] = us;
    }
    return j.dump(2) + "\n";
}

}  // namespace ocs
