#pragma once

#include "siskit/model.hpp"
#include "siskit/scoring.hpp"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace siskit::testing {

std::string fixture_path(const std::string& name);
AssessmentModel load_fixture(const std::string& name);

/// Score computed as sum_r P_r * rowsum_r + sum_c P_c * colsum_c, which is
/// algebraically equal to the cell-wise definition but accumulates differently.
double row_col_sis(const EffectMatrix& m, const std::map<std::string, double>& priority);

/// Independent min-max map onto [0.1, 1] in long double.
std::map<std::string, double> reference_normalize(const std::map<std::string, double>& raw);

/// All simple paths of positive edges with at least min_length edges, grown
/// breadth-first from every node.
std::set<std::vector<std::string>> all_positive_paths(const DecisionMap& dmap, std::size_t min_length);

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int effect() { return uniform(-1, 1); }
    bool coin() { return uniform(0, 1) == 1; }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// QAs q0..q{n-1}, random dimension and levels. Every dimension has at least one QA.
std::vector<QualityAttribute> random_qas(Gen& g, int count);

/// Random effects; same-dimension diagonals stay 0.
EffectMatrix random_matrix(Gen& g, const std::vector<QualityAttribute>& qas, Dimension from, Dimension to);

/// Model with `alternatives` non-optimal alternatives carrying random explicit
/// matrices over `pairs` random dimension pairs, plus a theoretical optimal
/// whose effects are +1 in every allowed cell (so it dominates every pair).
AssessmentModel random_model(Gen& g, int qa_count, int alternatives, int pairs);

/// Random signed graph over at most max_nodes nodes and max_edges edges
/// (no self-loops, no parallel edges).
DecisionMap random_dmap(Gen& g, int max_nodes, int max_edges);

} // namespace siskit::testing
