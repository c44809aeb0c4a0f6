#include "anomalia/json_io.hpp"

#include <json.hpp>

namespace anomalia {

namespace {

using json = nlohmann::ordered_json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InvalidInputError("json: malformed document");
    return j;
}

json elt_to_json(const GroupElt& a) { return json(a); }

GroupElt elt_from_json(const json& j) {
    if (!j.is_array()) throw InvalidInputError("json: element must be an integer array");
    GroupElt a;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw InvalidInputError("json: element coordinates must be integers");
        a.push_back(v.get<std::int64_t>());
    }
    return a;
}

json rational_to_json(const QmodZ& v) { return json(v.str()); }

QmodZ rational_from_json(const json& j) {
    if (j.is_number_integer()) return QmodZ(j.get<std::int64_t>(), 1);
    if (!j.is_string()) throw InvalidInputError("json: rational must be a \"num/den\" string");
    return QmodZ::parse(j.get<std::string>());
}

json group_node(const FinAbGroup& g) {
    json j;
    j["factors"] = g.factors();
    return j;
}

FinAbGroup group_from_node(const json& j) {
    if (!j.is_object() || !j.contains("factors") || !j["factors"].is_array())
        throw InvalidInputError("json: group must be {\"factors\": [...]}");
    std::vector<std::int64_t> fs;
    for (const auto& v : j["factors"]) {
        if (!v.is_number_integer()) throw InvalidInputError("json: factors must be integers");
        fs.push_back(v.get<std::int64_t>());
    }
    return FinAbGroup(std::move(fs));
}

json form_node(const QuadraticForm& f) {
    json j;
    j["group"] = group_node(f.group());
    json diag = json::array();
    for (const auto& v : f.diag()) diag.push_back(rational_to_json(v));
    j["q_diag"] = std::move(diag);
    json pairing = json::array();
    for (const auto& row : f.pairing()) {
        json r = json::array();
        for (const auto& v : row) r.push_back(rational_to_json(v));
        pairing.push_back(std::move(r));
    }
    j["pairing"] = std::move(pairing);
    return j;
}

QuadraticForm form_from_node(const json& j) {
    if (!j.is_object() || !j.contains("group") || !j.contains("q_diag") || !j.contains("pairing"))
        throw InvalidInputError("json: form must have group, q_diag and pairing");
    FinAbGroup g = group_from_node(j["group"]);
    std::vector<QmodZ> diag;
    for (const auto& v : j["q_diag"]) diag.push_back(rational_from_json(v));
    std::vector<std::vector<QmodZ>> pairing;
    for (const auto& row : j["pairing"]) {
        std::vector<QmodZ> r;
        for (const auto& v : row) r.push_back(rational_from_json(v));
        pairing.push_back(std::move(r));
    }
    return QuadraticForm(std::move(g), std::move(diag), std::move(pairing));
}

json subgroup_node(const Subgroup& h) {
    json j;
    json gens = json::array();
    for (const auto& g : h.generators()) gens.push_back(elt_to_json(g));
    j["generators"] = std::move(gens);
    return j;
}

} // namespace

std::string group_to_json(const FinAbGroup& g) { return group_node(g).dump(); }

FinAbGroup group_from_json(const std::string& text) { return group_from_node(parse(text)); }

std::string subgroup_to_json(const Subgroup& h) { return subgroup_node(h).dump(); }

Subgroup subgroup_from_json(const FinAbGroup& parent, const std::string& text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
        throw InvalidInputError("json: subgroup must be {\"generators\": [[...], ...]}");
    std::vector<GroupElt> gens;
    for (const auto& v : j["generators"]) gens.push_back(elt_from_json(v));
    return Subgroup::generated(parent, std::move(gens));
}

std::string form_to_json(const QuadraticForm& f) { return form_node(f).dump(); }

QuadraticForm form_from_json(const std::string& text) { return form_from_node(parse(text)); }

std::string extension_to_json(const LagrangianExtension& e) {
    json j;
    j["metric"] = form_node(e.metric().form());
    j["iota_images"] = json::array({elt_to_json(e.iota_generator())});
    j["quot_generator_lift"] = elt_to_json(e.lift_of_one());
    j["anomaly_index"] = e.anomaly_index();
    return j.dump();
}

LagrangianExtension extension_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("metric") || !j.contains("iota_images") ||
        !j.contains("quot_generator_lift"))
        throw InvalidInputError("json: extension must have metric, iota_images and quot_generator_lift");
    MetricGroup metric(form_from_node(j["metric"]));
    if (!j["iota_images"].is_array() || j["iota_images"].empty())
        throw InvalidInputError("json: iota_images must list at least the generator image");
    GroupElt iota = elt_from_json(j["iota_images"][0]);
    GroupElt lift = elt_from_json(j["quot_generator_lift"]);
    return LagrangianExtension(std::move(metric), std::move(iota), std::move(lift));
}

std::string report_to_json(const OrbifoldReport& r) {
    json j;
    j["n"] = r.n;
    j["c"] = r.c;
    j["k"] = r.k;
    json spectrum = json::array();
    for (const auto& h : r.spectrum) spectrum.push_back(rational_to_json(h));
    j["spectrum"] = std::move(spectrum);
    j["anomalous"] = r.anomalous;
    j["anomaly_index"] = r.anomaly_index;
    j["metric_group"] = form_node(r.rep_category.metric().form());
    j["dual_lagrangian"] = r.dual_lagrangian ? subgroup_node(*r.dual_lagrangian) : json(nullptr);
    return j.dump();
}

} // namespace anomalia
