#include "siskit/validate.hpp"
#include "siskit/scoring.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace siskit {

std::string_view to_string(Severity s)
{
    return s == Severity::error ? "ERROR" : "WARNING";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics)
{
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& d)
{
    return fmt::format("{} {}: {}", to_string(d.severity), d.path.empty() ? "model" : d.path, d.message);
}

namespace {

class Checker {
public:
    explicit Checker(const AssessmentModel& model) : model_(model) {}

    std::vector<Diagnostic> run()
    {
        check_qas();
        check_weights();
        check_scenarios();
        check_utility_matrix();
        check_alternatives();
        if (errors_.empty())
            check_optimal_dominates();

        std::vector<Diagnostic> out = std::move(errors_);
        out.insert(out.end(), warnings_.begin(), warnings_.end());
        return out;
    }

private:
    void error(ErrorCode code, std::string path, std::string message)
    {
        errors_.push_back({Severity::error, code, std::move(path), std::move(message)});
    }

    void warning(ErrorCode code, std::string path, std::string message)
    {
        warnings_.push_back({Severity::warning, code, std::move(path), std::move(message)});
    }

    void check_id(const std::string& id, const std::string& path)
    {
        if (id.empty())
            error(ErrorCode::schema, path, "id must not be empty");
        else if (id.size() > kMaxIdLength)
            error(ErrorCode::schema, path, fmt::format("id longer than {} characters", kMaxIdLength));
    }

    void check_level(int level, const std::string& path)
    {
        if (level < kMinLevel || level > kMaxLevel)
            error(ErrorCode::level_out_of_range, path,
                  fmt::format("level {} out of range (expected 1, 2 or 3)", level));
    }

    void check_qas()
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < model_.qas.size(); ++i) {
            const auto& qa = model_.qas[i];
            std::string p = fmt::format("quality_attributes[{}]", i);
            check_id(qa.id, p + ".id");
            if (!seen.insert(qa.id).second)
                error(ErrorCode::duplicate_id, p + ".id", fmt::format("duplicate QA id '{}'", qa.id));
            check_level(qa.importance, p + ".importance");
            check_level(qa.risk, p + ".risk");
            if (qa.priority && !std::isfinite(*qa.priority))
                error(ErrorCode::schema, p + ".priority", "priority must be finite");
        }
    }

    void check_weights()
    {
        const WeightConfig& w = model_.weights;
        bool in_range = true;
        for (auto [value, name] : {std::pair{w.importance_weight, "importance_weight"},
                                   std::pair{w.risk_weight, "risk_weight"}}) {
            if (!(value >= 0.0 && value <= 1.0)) {
                error(ErrorCode::schema, fmt::format("weights.{}", name),
                      fmt::format("weight {} outside [0, 1]", value));
                in_range = false;
            }
        }
        double sum = w.importance_weight + w.risk_weight;
        if (in_range && std::abs(sum - 1.0) > 1e-9)
            warning(ErrorCode::invalid_model, "weights", fmt::format("weights sum to {:g}", sum));
    }

    void check_scenarios()
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < model_.scenarios.size(); ++i) {
            const auto& s = model_.scenarios[i];
            std::string p = fmt::format("scenarios[{}].id", i);
            check_id(s.id, p);
            if (!seen.insert(s.id).second)
                error(ErrorCode::duplicate_id, p, fmt::format("duplicate scenario id '{}'", s.id));
        }
    }

    bool has_scenario(const std::string& id) const
    {
        return std::any_of(model_.scenarios.begin(), model_.scenarios.end(),
                           [&](const Scenario& s) { return s.id == id; });
    }

    void check_utility_matrix()
    {
        if (!model_.utility_matrix)
            return;
        const UtilityMatrix& um = *model_.utility_matrix;
        for (std::size_t i = 0; i < um.rows.size(); ++i) {
            if (!model_.find_qa(um.rows[i]))
                error(ErrorCode::dangling_reference, fmt::format("utility_matrix.rows[{}]", i),
                      fmt::format("unknown QA '{}'", um.rows[i]));
        }
        for (std::size_t i = 0; i < um.columns.size(); ++i) {
            if (!has_scenario(um.columns[i]))
                error(ErrorCode::dangling_reference, fmt::format("utility_matrix.columns[{}]", i),
                      fmt::format("unknown scenario '{}'", um.columns[i]));
        }
        for (const auto& [key, cell] : um.cells) {
            std::string p = fmt::format("utility_matrix.cells[{},{}]", key.first, key.second);
            if (std::find(um.rows.begin(), um.rows.end(), key.first) == um.rows.end())
                error(ErrorCode::dangling_reference, p, fmt::format("QA '{}' is not a utility-matrix row", key.first));
            if (std::find(um.columns.begin(), um.columns.end(), key.second) == um.columns.end())
                error(ErrorCode::dangling_reference, p,
                      fmt::format("scenario '{}' is not a utility-matrix column", key.second));
            check_level(cell.importance, p + ".importance");
            check_level(cell.risk, p + ".risk");
        }
    }

    void check_dmap(const DecisionMap& dmap, const std::string& path)
    {
        std::set<std::string> node_ids;
        for (std::size_t i = 0; i < dmap.nodes.size(); ++i) {
            const auto& node = dmap.nodes[i];
            std::string p = fmt::format("{}.nodes[{}]", path, i);
            if (!node_ids.insert(node.qa_id).second)
                error(ErrorCode::duplicate_id, p + ".qa", fmt::format("duplicate node '{}'", node.qa_id));
            const QualityAttribute* qa = model_.find_qa(node.qa_id);
            if (!qa) {
                error(ErrorCode::dangling_reference, p + ".qa", fmt::format("unknown QA '{}'", node.qa_id));
            } else if (qa->dimension != node.dimension) {
                error(ErrorCode::wrong_dimension, p + ".dimension",
                      fmt::format("node '{}' is tagged {} but the QA belongs to {}", node.qa_id,
                                  to_string(node.dimension), to_string(qa->dimension)));
            }
        }

        std::set<std::pair<std::string, std::string>> edges;
        for (std::size_t i = 0; i < dmap.edges.size(); ++i) {
            const auto& e = dmap.edges[i];
            std::string p = fmt::format("{}.edges[{}]", path, i);
            if (!node_ids.count(e.from))
                error(ErrorCode::dangling_reference, p + ".from", fmt::format("edge source '{}' is not a node", e.from));
            if (!node_ids.count(e.to))
                error(ErrorCode::dangling_reference, p + ".to", fmt::format("edge target '{}' is not a node", e.to));
            if (e.from == e.to)
                error(ErrorCode::invalid_model, p, fmt::format("self-loop on '{}'", e.from));
            if (e.sign != 1 && e.sign != -1)
                error(ErrorCode::invalid_effect, p + ".sign", fmt::format("sign {} is not -1 or +1", e.sign));
            if (!edges.emplace(e.from, e.to).second)
                error(ErrorCode::duplicate_id, p, fmt::format("duplicate edge {} -> {}", e.from, e.to));
        }
    }

    void check_axis(const std::vector<std::string>& ids, Dimension dim, const std::string& path)
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            std::string p = fmt::format("{}[{}]", path, i);
            if (!seen.insert(ids[i]).second)
                error(ErrorCode::duplicate_id, p, fmt::format("QA '{}' listed twice", ids[i]));
            const QualityAttribute* qa = model_.find_qa(ids[i]);
            if (!qa)
                error(ErrorCode::dangling_reference, p, fmt::format("unknown QA '{}'", ids[i]));
            else if (qa->dimension != dim)
                error(ErrorCode::wrong_dimension, p,
                      fmt::format("QA '{}' belongs to {}, not {}", ids[i], to_string(qa->dimension), to_string(dim)));
        }
    }

    void check_matrix(const EffectMatrix& m, const std::string& path)
    {
        check_axis(m.row_qas, m.dim_from, path + ".rows");
        check_axis(m.col_qas, m.dim_to, path + ".columns");
        if (m.cells.size() != m.rows() * m.cols()) {
            error(ErrorCode::schema, path + ".effects",
                  fmt::format("expected {}x{} cells, found {}", m.rows(), m.cols(), m.cells.size()));
            return;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                int e = m.at(r, c).effect;
                std::string p = fmt::format("{}.effects[{}][{}]", path, r, c);
                if (e < -1 || e > 1)
                    error(ErrorCode::invalid_effect, p, fmt::format("effect {} is not one of -1, 0, +1", e));
                else if (m.dim_from == m.dim_to && m.row_qas[r] == m.col_qas[c] && e != 0)
                    error(ErrorCode::invalid_effect, p,
                          fmt::format("diagonal cell for QA '{}' must be 0", m.row_qas[r]));
            }
        }
    }

    void check_alternatives()
    {
        if (model_.alternatives.empty()) {
            error(ErrorCode::invalid_model, "alternatives", "no alternatives");
            return;
        }
        std::set<std::string> seen;
        int optimal_count = 0;
        for (std::size_t i = 0; i < model_.alternatives.size(); ++i) {
            const auto& alt = model_.alternatives[i];
            std::string p = fmt::format("alternatives[{}]", i);
            check_id(alt.id, p + ".id");
            if (!seen.insert(alt.id).second)
                error(ErrorCode::duplicate_id, p + ".id", fmt::format("duplicate alternative id '{}'", alt.id));
            if (alt.is_theoretical_optimal && ++optimal_count > 1)
                error(ErrorCode::invalid_model, p + ".is_theoretical_optimal",
                      "more than one alternative is flagged as theoretical optimal");
            if (!alt.dmap && !alt.matrices)
                error(ErrorCode::invalid_model, p, "alternative needs a dmap or matrices");
            if (alt.dmap)
                check_dmap(*alt.dmap, p + ".dmap");
            if (alt.matrices) {
                std::vector<DimensionPair> pairs;
                for (std::size_t k = 0; k < alt.matrices->size(); ++k) {
                    const EffectMatrix& m = (*alt.matrices)[k];
                    std::string mp = fmt::format("{}.matrices[{}]", p, k);
                    if (std::find(pairs.begin(), pairs.end(), m.pair()) != pairs.end())
                        error(ErrorCode::duplicate_id, mp,
                              fmt::format("second matrix for pair {}", to_string(m.pair())));
                    pairs.push_back(m.pair());
                    check_matrix(m, mp);
                }
            }
        }
    }

    // Only meaningful on an otherwise valid model.
    void check_optimal_dominates()
    {
        if (!model_.theoretical_optimal())
            return;
        try {
            score_model(model_);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::optimal_not_optimal)
                warning(e.code(), "alternatives", e.what());
        }
    }

    const AssessmentModel& model_;
    std::vector<Diagnostic> errors_;
    std::vector<Diagnostic> warnings_;
};

} // namespace

std::vector<Diagnostic> validate_model(const AssessmentModel& model)
{
    return Checker(model).run();
}

} // namespace siskit
