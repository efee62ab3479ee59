#include "siskit/model_io.hpp"
#include "siskit/error.hpp"
#include "siskit/validate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace siskit {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& message)
{
    throw Error(ErrorCode::schema, path.empty() ? message : path + ": " + message, path);
}

std::string child(const std::string& path, std::string_view key)
{
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string item(const std::string& path, std::size_t index)
{
    return fmt::format("{}[{}]", path, index);
}

void expect_object(const Json& value, const std::string& path)
{
    if (!value.is_object())
        schema_error(path, "expected an object");
}

const Json& expect_array(const Json& value, const std::string& path)
{
    if (!value.is_array())
        schema_error(path, "expected an array");
    return value;
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            schema_error(child(path, it.key()), "unknown field");
    }
}

const Json& require(const Json& obj, std::string_view key, const std::string& path)
{
    auto it = obj.find(std::string(key));
    if (it == obj.end())
        schema_error(child(path, key), "missing required field");
    return *it;
}

const Json* optional_field(const Json& obj, std::string_view key)
{
    auto it = obj.find(std::string(key));
    if (it == obj.end() || it->is_null())
        return nullptr;
    return &*it;
}

std::string get_string(const Json& value, const std::string& path)
{
    if (!value.is_string())
        schema_error(path, "expected a string");
    return value.get<std::string>();
}

std::string get_id(const Json& value, const std::string& path)
{
    std::string id = get_string(value, path);
    if (id.empty())
        schema_error(path, "id must not be empty");
    if (id.size() > kMaxIdLength)
        schema_error(path, fmt::format("id longer than {} characters", kMaxIdLength));
    return id;
}

std::string optional_string(const Json& obj, std::string_view key, const std::string& path)
{
    const Json* v = optional_field(obj, key);
    return v ? get_string(*v, child(path, key)) : std::string();
}

double get_number(const Json& value, const std::string& path)
{
    if (!value.is_number())
        schema_error(path, "expected a number");
    double v = value.get<double>();
    if (!std::isfinite(v))
        schema_error(path, "expected a finite number");
    return v;
}

long long get_integer(const Json& value, const std::string& path)
{
    if (value.is_number_integer())
        return value.get<long long>();
    if (value.is_number_float()) {
        double v = value.get<double>();
        if (std::isfinite(v) && std::floor(v) == v)
            return static_cast<long long>(v);
    }
    schema_error(path, "expected an integer");
}

int get_level(const Json& value, const std::string& path)
{
    long long v = get_integer(value, path);
    if (v < kMinLevel || v > kMaxLevel)
        schema_error(path, fmt::format("level {} out of range (expected 1, 2 or 3)", v));
    return static_cast<int>(v);
}

int get_effect(const Json& value, const std::string& path)
{
    if (!value.is_number())
        schema_error(path, "effect must be -1, 0 or +1");
    double v = value.get<double>();
    if (v != -1.0 && v != 0.0 && v != 1.0)
        schema_error(path, fmt::format("effect {} is not one of -1, 0, +1", value.dump()));
    return static_cast<int>(v);
}

Dimension get_dimension(const Json& value, const std::string& path)
{
    std::string code = get_string(value, path);
    auto d = parse_dimension(code);
    if (!d)
        schema_error(path, fmt::format("unknown dimension code '{}' (expected Ec, En, S or T)", code));
    return *d;
}

std::optional<ImpactLevel> optional_impact(const Json& obj, const std::string& path)
{
    const Json* v = optional_field(obj, "impact_level");
    if (!v)
        return std::nullopt;
    std::string p = child(path, "impact_level");
    std::string text = get_string(*v, p);
    auto level = parse_impact_level(text);
    if (!level)
        schema_error(p, fmt::format("unknown impact level '{}' (expected direct, enabling or systemic)", text));
    return level;
}

std::vector<std::string> get_id_list(const Json& value, const std::string& path)
{
    expect_array(value, path);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < value.size(); ++i)
        ids.push_back(get_id(value[i], item(path, i)));
    return ids;
}

double get_weight(const Json& obj, std::string_view key, const std::string& path)
{
    std::string p = child(path, key);
    double w = get_number(require(obj, key, path), p);
    if (w < 0.0 || w > 1.0)
        schema_error(p, fmt::format("weight {} outside [0, 1]", w));
    return w;
}

QualityAttribute read_qa(const Json& obj, const std::string& path)
{
    expect_object(obj, path);
    check_keys(obj, path, {"id", "name", "definition", "dimension", "importance", "risk", "priority"});
    QualityAttribute qa;
    qa.id = get_id(require(obj, "id", path), child(path, "id"));
    qa.name = optional_string(obj, "name", path);
    if (qa.name.empty())
        qa.name = qa.id;
    qa.definition = optional_string(obj, "definition", path);
    qa.dimension = get_dimension(require(obj, "dimension", path), child(path, "dimension"));
    qa.importance = get_level(require(obj, "importance", path), child(path, "importance"));
    qa.risk = get_level(require(obj, "risk", path), child(path, "risk"));
    if (const Json* p = optional_field(obj, "priority"))
        qa.priority = get_number(*p, child(path, "priority"));
    return qa;
}

UtilityMatrix read_utility_matrix(const Json& obj, const std::string& path)
{
    expect_object(obj, path);
    check_keys(obj, path, {"rows", "columns", "cells"});
    UtilityMatrix um;
    um.rows = get_id_list(require(obj, "rows", path), child(path, "rows"));
    um.columns = get_id_list(require(obj, "columns", path), child(path, "columns"));
    if (const Json* cells = optional_field(obj, "cells")) {
        std::string cp = child(path, "cells");
        expect_array(*cells, cp);
        for (std::size_t i = 0; i < cells->size(); ++i) {
            const Json& c = (*cells)[i];
            std::string p = item(cp, i);
            expect_object(c, p);
            check_keys(c, p, {"qa", "scenario", "importance", "risk"});
            std::string qa = get_id(require(c, "qa", p), child(p, "qa"));
            std::string sc = get_id(require(c, "scenario", p), child(p, "scenario"));
            UtilityCell cell{get_level(require(c, "importance", p), child(p, "importance")),
                             get_level(require(c, "risk", p), child(p, "risk"))};
            if (!um.cells.emplace(std::make_pair(qa, sc), cell).second)
                schema_error(p, fmt::format("duplicate cell ({}, {})", qa, sc));
        }
    }
    return um;
}

DecisionMap read_dmap(const Json& obj, const std::string& path)
{
    expect_object(obj, path);
    check_keys(obj, path, {"nodes", "edges"});
    DecisionMap dmap;
    std::string np = child(path, "nodes");
    const Json& nodes = expect_array(require(obj, "nodes", path), np);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        std::string p = item(np, i);
        expect_object(nodes[i], p);
        check_keys(nodes[i], p, {"qa", "dimension", "impact_level"});
        DecisionMapNode node;
        node.qa_id = get_id(require(nodes[i], "qa", p), child(p, "qa"));
        node.dimension = get_dimension(require(nodes[i], "dimension", p), child(p, "dimension"));
        node.impact_level = optional_impact(nodes[i], p);
        dmap.nodes.push_back(std::move(node));
    }
    if (const Json* edges = optional_field(obj, "edges")) {
        std::string ep = child(path, "edges");
        expect_array(*edges, ep);
        for (std::size_t i = 0; i < edges->size(); ++i) {
            const Json& e = (*edges)[i];
            std::string p = item(ep, i);
            expect_object(e, p);
            check_keys(e, p, {"from", "to", "sign", "impact_level"});
            DecisionMapEdge edge;
            edge.from = get_id(require(e, "from", p), child(p, "from"));
            edge.to = get_id(require(e, "to", p), child(p, "to"));
            std::string sp = child(p, "sign");
            int sign = get_effect(require(e, "sign", p), sp);
            if (sign == 0)
                schema_error(sp, "edge sign must be -1 or +1");
            edge.sign = sign;
            edge.impact_level = optional_impact(e, p);
            dmap.edges.push_back(std::move(edge));
        }
    }
    return dmap;
}

EffectMatrix read_matrix(const Json& obj, const std::string& path)
{
    expect_object(obj, path);
    check_keys(obj, path, {"dim_from", "dim_to", "rows", "columns", "effects", "annotations"});
    EffectMatrix m(get_dimension(require(obj, "dim_from", path), child(path, "dim_from")),
                   get_dimension(require(obj, "dim_to", path), child(path, "dim_to")),
                   get_id_list(require(obj, "rows", path), child(path, "rows")),
                   get_id_list(require(obj, "columns", path), child(path, "columns")));

    std::string ep = child(path, "effects");
    const Json& effects = expect_array(require(obj, "effects", path), ep);
    if (effects.size() != m.rows())
        schema_error(ep, fmt::format("expected {} rows, found {}", m.rows(), effects.size()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::string rp = item(ep, r);
        const Json& row = expect_array(effects[r], rp);
        if (row.size() != m.cols())
            schema_error(rp, fmt::format("expected {} columns, found {}", m.cols(), row.size()));
        for (std::size_t c = 0; c < m.cols(); ++c)
            m.at(r, c).effect = get_effect(row[c], item(rp, c));
    }

    if (const Json* notes = optional_field(obj, "annotations")) {
        std::string ap = child(path, "annotations");
        expect_array(*notes, ap);
        for (std::size_t i = 0; i < notes->size(); ++i) {
            const Json& a = (*notes)[i];
            std::string p = item(ap, i);
            expect_object(a, p);
            check_keys(a, p, {"row", "col", "impact_level", "rationale"});
            std::string row = get_id(require(a, "row", p), child(p, "row"));
            std::string col = get_id(require(a, "col", p), child(p, "col"));
            auto r = m.row_index(row);
            auto c = m.col_index(col);
            if (!r || !c)
                schema_error(p, fmt::format("annotation targets unknown cell ({}, {})", row, col));
            EffectCell& cell = m.at(*r, *c);
            cell.impact_level = optional_impact(a, p);
            if (const Json* why = optional_field(a, "rationale"))
                cell.rationale = get_string(*why, child(p, "rationale"));
        }
    }
    return m;
}

Alternative read_alternative(const Json& obj, const std::string& path)
{
    expect_object(obj, path);
    check_keys(obj, path, {"id", "name", "description", "is_theoretical_optimal", "dmap", "matrices"});
    Alternative alt;
    alt.id = get_id(require(obj, "id", path), child(path, "id"));
    alt.name = optional_string(obj, "name", path);
    if (alt.name.empty())
        alt.name = alt.id;
    alt.description = optional_string(obj, "description", path);
    if (const Json* to = optional_field(obj, "is_theoretical_optimal")) {
        if (!to->is_boolean())
            schema_error(child(path, "is_theoretical_optimal"), "expected a boolean");
        alt.is_theoretical_optimal = to->get<bool>();
    }
    if (const Json* dmap = optional_field(obj, "dmap"))
        alt.dmap = read_dmap(*dmap, child(path, "dmap"));
    if (const Json* mats = optional_field(obj, "matrices")) {
        std::string mp = child(path, "matrices");
        expect_array(*mats, mp);
        std::vector<EffectMatrix> matrices;
        for (std::size_t i = 0; i < mats->size(); ++i)
            matrices.push_back(read_matrix((*mats)[i], item(mp, i)));
        alt.matrices = std::move(matrices);
    }
    return alt;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Json impact_json(const std::optional<ImpactLevel>& level)
{
    return level ? Json(std::string(to_string(*level))) : Json();
}

Json matrix_to_json(const EffectMatrix& m)
{
    Json j;
    j["dim_from"] = std::string(to_string(m.dim_from));
    j["dim_to"] = std::string(to_string(m.dim_to));
    j["rows"] = m.row_qas;
    j["columns"] = m.col_qas;
    Json effects = Json::array();
    Json notes = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const EffectCell& cell = m.at(r, c);
            row.push_back(cell.effect);
            if (cell.impact_level || cell.rationale) {
                Json a;
                a["row"] = m.row_qas[r];
                a["col"] = m.col_qas[c];
                if (cell.impact_level)
                    a["impact_level"] = impact_json(cell.impact_level);
                if (cell.rationale)
                    a["rationale"] = *cell.rationale;
                notes.push_back(std::move(a));
            }
        }
        effects.push_back(std::move(row));
    }
    j["effects"] = std::move(effects);
    if (!notes.empty())
        j["annotations"] = std::move(notes);
    return j;
}

Json dmap_to_json(const DecisionMap& dmap)
{
    Json nodes = Json::array();
    for (const auto& n : dmap.nodes) {
        Json j;
        j["qa"] = n.qa_id;
        j["dimension"] = std::string(to_string(n.dimension));
        if (n.impact_level)
            j["impact_level"] = impact_json(n.impact_level);
        nodes.push_back(std::move(j));
    }
    Json edges = Json::array();
    for (const auto& e : dmap.edges) {
        Json j;
        j["from"] = e.from;
        j["to"] = e.to;
        j["sign"] = e.sign;
        if (e.impact_level)
            j["impact_level"] = impact_json(e.impact_level);
        edges.push_back(std::move(j));
    }
    Json j;
    j["nodes"] = std::move(nodes);
    j["edges"] = std::move(edges);
    return j;
}

} // namespace

Json parse_json_text(std::string_view text)
{
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw Error(ErrorCode::syntax,
                    fmt::format("syntax error at line {}, column {} (byte {})", line, col, e.byte));
    }
}

AssessmentModel model_from_json(const Json& doc)
{
    const std::string root;
    expect_object(doc, "document");
    check_keys(doc, root,
               {"schema_version", "weights", "quality_attributes", "scenarios", "utility_matrix", "alternatives"});

    const Json& version = require(doc, "schema_version", root);
    if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
        schema_error("schema_version", fmt::format("unsupported schema version {} (expected \"{}\")",
                                                   version.dump(), kSchemaVersion));

    AssessmentModel model;

    const Json& weights = require(doc, "weights", root);
    expect_object(weights, "weights");
    check_keys(weights, "weights", {"importance_weight", "risk_weight"});
    model.weights.importance_weight = get_weight(weights, "importance_weight", "weights");
    model.weights.risk_weight = get_weight(weights, "risk_weight", "weights");

    const Json& qas = expect_array(require(doc, "quality_attributes", root), "quality_attributes");
    for (std::size_t i = 0; i < qas.size(); ++i)
        model.qas.push_back(read_qa(qas[i], item("quality_attributes", i)));

    if (const Json* scenarios = optional_field(doc, "scenarios")) {
        expect_array(*scenarios, "scenarios");
        for (std::size_t i = 0; i < scenarios->size(); ++i) {
            std::string p = item("scenarios", i);
            const Json& s = (*scenarios)[i];
            expect_object(s, p);
            check_keys(s, p, {"id", "description"});
            model.scenarios.push_back(
                Scenario{get_id(require(s, "id", p), child(p, "id")), optional_string(s, "description", p)});
        }
    }

    if (const Json* um = optional_field(doc, "utility_matrix"))
        model.utility_matrix = read_utility_matrix(*um, "utility_matrix");

    const Json& alts = expect_array(require(doc, "alternatives", root), "alternatives");
    for (std::size_t i = 0; i < alts.size(); ++i)
        model.alternatives.push_back(read_alternative(alts[i], item("alternatives", i)));

    return model;
}

AssessmentModel parse_model_document(std::string_view text)
{
    return model_from_json(parse_json_text(text));
}

AssessmentModel parse_model(std::string_view text)
{
    AssessmentModel model = parse_model_document(text);
    for (const auto& d : validate_model(model)) {
        if (d.severity == Severity::error)
            throw Error(d.code, d.path.empty() ? d.message : d.path + ": " + d.message, d.path);
    }
    return model;
}

Json model_to_json(const AssessmentModel& model)
{
    Json doc;
    doc["schema_version"] = std::string(kSchemaVersion);
    doc["weights"] = {{"importance_weight", model.weights.importance_weight},
                      {"risk_weight", model.weights.risk_weight}};

    Json qas = Json::array();
    for (const auto& qa : model.qas) {
        Json j;
        j["id"] = qa.id;
        j["name"] = qa.name;
        j["definition"] = qa.definition;
        j["dimension"] = std::string(to_string(qa.dimension));
        j["importance"] = qa.importance;
        j["risk"] = qa.risk;
        if (qa.priority)
            j["priority"] = *qa.priority;
        qas.push_back(std::move(j));
    }
    doc["quality_attributes"] = std::move(qas);

    Json scenarios = Json::array();
    for (const auto& s : model.scenarios)
        scenarios.push_back({{"id", s.id}, {"description", s.description}});
    doc["scenarios"] = std::move(scenarios);

    if (model.utility_matrix) {
        const UtilityMatrix& um = *model.utility_matrix;
        Json cells = Json::array();
        for (const auto& [key, cell] : um.cells) {
            cells.push_back({{"qa", key.first},
                             {"scenario", key.second},
                             {"importance", cell.importance},
                             {"risk", cell.risk}});
        }
        doc["utility_matrix"] = {{"rows", um.rows}, {"columns", um.columns}, {"cells", std::move(cells)}};
    }

    Json alts = Json::array();
    for (const auto& alt : model.alternatives) {
        Json j;
        j["id"] = alt.id;
        j["name"] = alt.name;
        j["description"] = alt.description;
        j["is_theoretical_optimal"] = alt.is_theoretical_optimal;
        if (alt.dmap)
            j["dmap"] = dmap_to_json(*alt.dmap);
        if (alt.matrices) {
            Json mats = Json::array();
            for (const auto& m : *alt.matrices)
                mats.push_back(matrix_to_json(m));
            j["matrices"] = std::move(mats);
        }
        alts.push_back(std::move(j));
    }
    doc["alternatives"] = std::move(alts);
    return doc;
}

std::string serialize_model(const AssessmentModel& model)
{
    return model_to_json(model).dump(2) + "\n";
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io, fmt::format("cannot read '{}'", path), path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw Error(ErrorCode::io, fmt::format("error while reading '{}'", path), path);
    return buffer.str();
}

} // namespace siskit
