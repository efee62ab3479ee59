#pragma once

#include "siskit/model.hpp"

#include <vector>

namespace siskit {

/// Builds one EffectMatrix per ordered dimension pair that has at least one
/// DMap edge. Rows are all model QAs of the source dimension and columns all
/// model QAs of the target dimension, in model order; cells without an edge
/// are 0. A cell's impact level is the edge's, else the target node's.
/// Output is sorted in presentation order. Edge order does not matter.
///
/// Throws Error{dangling_reference} when an edge endpoint is not a model QA.
std::vector<EffectMatrix> derive_matrices(const DecisionMap& dmap, const AssessmentModel& model);

/// The alternative's explicit matrices when present, otherwise the matrices
/// derived from its DMap. Sorted in presentation order.
std::vector<EffectMatrix> alternative_matrices(const Alternative& alt, const AssessmentModel& model);

/// Signed graph view of an alternative: its DMap when it has no explicit
/// matrices, otherwise one edge per nonzero matrix cell.
DecisionMap effect_graph(const Alternative& alt, const AssessmentModel& model);

} // namespace siskit
