#include "siskit/document.hpp"
#include "siskit/derive.hpp"
#include "siskit/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>

namespace siskit {

namespace {

Dimension dimension_field(const Json& obj, const char* key, const std::string& path)
{
    if (!obj.contains(key) || !obj.at(key).is_string())
        throw Error(ErrorCode::schema, fmt::format("{}.{}: expected a dimension code", path, key), path);
    auto d = parse_dimension(obj.at(key).get<std::string>());
    if (!d) {
        throw Error(ErrorCode::schema,
                    fmt::format("{}.{}: unknown dimension code '{}'", path, key, obj.at(key).get<std::string>()),
                    path);
    }
    return *d;
}

std::string string_field(const Json& obj, const char* key, const std::string& path)
{
    if (!obj.contains(key) || !obj.at(key).is_string() || obj.at(key).get<std::string>().empty())
        throw Error(ErrorCode::schema, fmt::format("{}.{}: expected a non-empty string", path, key), path);
    return obj.at(key).get<std::string>();
}

Json optional_number(const std::optional<double>& v)
{
    return v ? Json(*v) : Json();
}

Json number_map(const std::map<std::string, double>& values)
{
    Json j = Json::object();
    for (const auto& [id, v] : values)
        j[id] = v;
    return j;
}

std::map<std::string, double> read_number_map(const Json& j, const std::string& path)
{
    if (!j.is_object())
        throw Error(ErrorCode::schema, path + ": expected an object", path);
    std::map<std::string, double> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it->is_number())
            throw Error(ErrorCode::schema, fmt::format("{}.{}: expected a number", path, it.key()), path);
        out[it.key()] = it->get<double>();
    }
    return out;
}

} // namespace

std::vector<PriorityRow> priority_rows(const AssessmentModel& model, const std::optional<std::string>& scenario)
{
    const PrioritySet set = resolve_priorities(model, scenario);
    std::vector<PriorityRow> rows;
    for (const auto& qa : model.qas) {
        PriorityRow row{qa.id, qa.name, qa.dimension, qa.importance, qa.risk, 0.0, 0.0};
        if (scenario && model.utility_matrix) {
            auto it = model.utility_matrix->cells.find({qa.id, *scenario});
            if (it != model.utility_matrix->cells.end()) {
                row.importance = it->second.importance;
                row.risk = it->second.risk;
            }
        }
        const PriorityEntry& e = set.entries.at(qa.id);
        row.raw = e.raw;
        row.normalized = e.normalized;
        rows.push_back(std::move(row));
    }
    return rows;
}

ScoreReport build_score_report(const AssessmentModel& model, const ScoreOptions& options)
{
    ScoreReport report;
    report.mode = options.mode;
    report.scenario = options.scenario;
    for (const auto& alt : model.alternatives)
        report.alternatives.push_back({alt.id, alt.name, alt.is_theoretical_optimal});
    report.priorities = priority_rows(model, options.scenario);
    report.results = score_model(model, options);
    return report;
}

Json sis_result_to_json(const SisResult& r)
{
    Json j;
    j["dim_from"] = std::string(to_string(r.pair.from));
    j["dim_to"] = std::string(to_string(r.pair.to));
    j["raw"] = number_map(r.raw);
    j["normalized_percent"] = number_map(r.normalized);
    j["theoretical_optimal"] = optional_number(r.theoretical_optimal_sis);
    return j;
}

Json score_report_to_json(const ScoreReport& report)
{
    Json doc;
    doc["priority_mode"] = std::string(to_string(report.mode));
    doc["scenario"] = report.scenario ? Json(*report.scenario) : Json();

    Json alts = Json::array();
    for (const auto& a : report.alternatives)
        alts.push_back({{"id", a.id}, {"name", a.name}, {"is_theoretical_optimal", a.is_theoretical_optimal}});
    doc["alternatives"] = std::move(alts);

    Json prios = Json::array();
    for (const auto& p : report.priorities) {
        prios.push_back({{"qa_id", p.qa_id},
                         {"name", p.name},
                         {"dimension", std::string(to_string(p.dimension))},
                         {"importance", p.importance},
                         {"risk", p.risk},
                         {"raw", p.raw},
                         {"normalized", p.normalized}});
    }
    doc["priorities"] = std::move(prios);

    Json results = Json::array();
    for (const auto& r : report.results)
        results.push_back(sis_result_to_json(r));
    doc["results"] = std::move(results);
    return doc;
}

ScoreReport score_report_from_json(const Json& doc)
{
    try {
        ScoreReport report;
        std::string mode = doc.at("priority_mode").get<std::string>();
        if (mode != "raw" && mode != "normalized")
            throw Error(ErrorCode::schema, fmt::format("priority_mode: unknown mode '{}'", mode), "priority_mode");
        report.mode = mode == "raw" ? PriorityMode::raw : PriorityMode::normalized;
        if (doc.contains("scenario") && !doc.at("scenario").is_null())
            report.scenario = doc.at("scenario").get<std::string>();

        for (const auto& a : doc.at("alternatives")) {
            report.alternatives.push_back({string_field(a, "id", "alternatives"), a.value("name", std::string()),
                                           a.value("is_theoretical_optimal", false)});
        }
        for (const auto& p : doc.at("priorities")) {
            report.priorities.push_back({string_field(p, "qa_id", "priorities"), p.value("name", std::string()),
                                         dimension_field(p, "dimension", "priorities"), p.at("importance").get<int>(),
                                         p.at("risk").get<int>(), p.at("raw").get<double>(),
                                         p.at("normalized").get<double>()});
        }
        for (const auto& r : doc.at("results")) {
            SisResult result;
            result.pair = {dimension_field(r, "dim_from", "results"), dimension_field(r, "dim_to", "results")};
            result.raw = read_number_map(r.at("raw"), "results.raw");
            result.normalized = read_number_map(r.at("normalized_percent"), "results.normalized_percent");
            if (!r.at("theoretical_optimal").is_null())
                result.theoretical_optimal_sis = r.at("theoretical_optimal").get<double>();
            report.results.push_back(std::move(result));
        }
        return report;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::schema, fmt::format("malformed score document: {}", e.what()));
    }
}

CellOverride override_from_json(const Json& obj, const std::string& path)
{
    if (!obj.is_object())
        throw Error(ErrorCode::schema, path + ": expected an object", path);
    CellOverride o;
    o.alternative_id = string_field(obj, "alternative", path);
    o.dim_from = dimension_field(obj, "dim_from", path);
    o.dim_to = dimension_field(obj, "dim_to", path);
    o.row_qa = string_field(obj, "row_qa", path);
    o.col_qa = string_field(obj, "col_qa", path);
    if (!obj.contains("effect") || !obj.at("effect").is_number())
        throw Error(ErrorCode::invalid_effect, path + ".effect: expected -1, 0 or +1", path + ".effect");
    double effect = obj.at("effect").get<double>();
    if (effect != -1.0 && effect != 0.0 && effect != 1.0) {
        throw Error(ErrorCode::invalid_effect,
                    fmt::format("{}.effect: {} is not one of -1, 0, +1", path, obj.at("effect").dump()),
                    path + ".effect");
    }
    o.new_effect = static_cast<int>(effect);
    return o;
}

WhatIfPatch patch_from_json(const Json& doc)
{
    WhatIfPatch patch;
    if (!doc.is_object() || !doc.contains("overrides") || !doc.at("overrides").is_array())
        throw Error(ErrorCode::schema, "patch: expected {\"overrides\": [...]}", "overrides");
    const Json& list = doc.at("overrides");
    for (std::size_t i = 0; i < list.size(); ++i)
        patch.overrides.push_back(override_from_json(list[i], fmt::format("overrides[{}]", i)));
    return patch;
}

WhatIfPatch parse_patch(std::string_view text)
{
    if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }))
        return {};
    return patch_from_json(parse_json_text(text));
}

Json override_to_json(const CellOverride& o)
{
    return {{"alternative", o.alternative_id},
            {"dim_from", std::string(to_string(o.dim_from))},
            {"dim_to", std::string(to_string(o.dim_to))},
            {"row_qa", o.row_qa},
            {"col_qa", o.col_qa},
            {"effect", o.new_effect}};
}

Json patch_to_json(const WhatIfPatch& patch)
{
    Json list = Json::array();
    for (const auto& o : patch.overrides)
        list.push_back(override_to_json(o));
    return {{"overrides", std::move(list)}};
}

Json whatif_entry_to_json(const WhatIfEntry& e)
{
    return {{"dim_from", std::string(to_string(e.pair.from))},
            {"dim_to", std::string(to_string(e.pair.to))},
            {"alternative", e.alternative_id},
            {"old_raw", e.old_raw},
            {"new_raw", e.new_raw},
            {"delta_raw", e.delta_raw},
            {"old_percent", optional_number(e.old_percent)},
            {"new_percent", optional_number(e.new_percent)},
            {"delta_percent", optional_number(e.delta_percent)}};
}

Json chain_to_json(const SynergyChain& chain)
{
    Json dims = Json::array();
    for (Dimension d : chain.path_dimensions)
        dims.push_back(std::string(to_string(d)));
    Json crossed = Json::array();
    for (Dimension d : chain.dimensions_crossed)
        crossed.push_back(std::string(to_string(d)));
    return {{"path", chain.path}, {"path_dimensions", std::move(dims)},
            {"dimensions_crossed", std::move(crossed)}, {"length", chain.length}};
}

Json whatif_report_to_json(const WhatIfReport& report)
{
    Json entries = Json::array();
    for (const auto& e : report.entries)
        entries.push_back(whatif_entry_to_json(e));
    Json chains = Json::array();
    for (const auto& c : report.changed_chains) {
        chains.push_back({{"alternative", c.alternative_id},
                          {"status", c.created ? "created" : "broken"},
                          {"chain", chain_to_json(c.chain)}});
    }
    return {{"entries", std::move(entries)}, {"changed_chains", std::move(chains)}};
}

Json analysis_to_json(const AssessmentModel& model)
{
    Json alts = Json::array();
    for (const auto& alt : model.alternatives) {
        auto mats = alternative_matrices(alt, model);

        Json tradeoffs = Json::array();
        for (const auto& t : find_tradeoffs(mats, TradeoffScope::all)) {
            Json j{{"from_qa", t.from_qa},
                   {"to_qa", t.to_qa},
                   {"pair", to_string(t.pair)},
                   {"same_dimension", t.same_dimension}};
            j["impact_level"] = t.impact_level ? Json(std::string(to_string(*t.impact_level))) : Json();
            tradeoffs.push_back(std::move(j));
        }

        Json chains = Json::array();
        for (const auto& c : find_synergy_chains(effect_graph(alt, model), kReportedChainMinLength))
            chains.push_back(chain_to_json(c));

        auto ranking = most_affected_qas(mats, model);
        auto counts = [](const std::vector<AffectedCount>& list) {
            Json out = Json::array();
            for (const auto& c : list)
                out.push_back({{"qa_id", c.qa_id}, {"positive_in", c.positive_in}, {"negative_in", c.negative_in}});
            return out;
        };

        alts.push_back({{"alternative", alt.id},
                        {"tradeoffs", std::move(tradeoffs)},
                        {"synergy_chains", std::move(chains)},
                        {"most_negatively_affected", counts(ranking.by_negative)},
                        {"most_positively_affected", counts(ranking.by_positive)}});
    }
    return {{"alternatives", std::move(alts)}};
}

Json matrices_to_json(const AssessmentModel& model, const PrioritySet& priorities)
{
    auto axis = [&](const std::vector<std::string>& ids) {
        Json out = Json::array();
        for (const auto& id : ids) {
            const QualityAttribute* qa = model.find_qa(id);
            const auto& p = priorities.entries.at(id);
            out.push_back({{"id", id}, {"name", qa ? qa->name : id}, {"raw_priority", p.raw},
                           {"normalized_priority", p.normalized}});
        }
        return out;
    };

    Json alts = Json::array();
    for (const auto& alt : model.alternatives) {
        Json mats = Json::array();
        for (const auto& m : alternative_matrices(alt, model)) {
            Json effects = Json::array();
            for (std::size_t r = 0; r < m.rows(); ++r) {
                Json row = Json::array();
                for (std::size_t c = 0; c < m.cols(); ++c)
                    row.push_back(m.at(r, c).effect);
                effects.push_back(std::move(row));
            }
            mats.push_back({{"pair", to_string(m.pair())},
                            {"dim_from", std::string(to_string(m.dim_from))},
                            {"dim_to", std::string(to_string(m.dim_to))},
                            {"rows", axis(m.row_qas)},
                            {"columns", axis(m.col_qas)},
                            {"effects", std::move(effects)}});
        }
        alts.push_back({{"alternative", alt.id},
                        {"name", alt.name},
                        {"is_theoretical_optimal", alt.is_theoretical_optimal},
                        {"matrices", std::move(mats)}});
    }
    return {{"alternatives", std::move(alts)}};
}

} // namespace siskit
