#pragma once

#include <optional>
#include <string>

#include "orbikink/ribbon_graph.hpp"
#include "orbikink/walk.hpp"

namespace orbikink {

// Graphviz text for g. Each vertex gets a comment listing its darts in
// clockwise order, and each edge end carries its position in that order as
// tail/head label. Edges used by `highlight` are drawn bold with their
// multiplicity.
std::string to_dot(const RibbonGraph& g, const std::optional<Walk>& highlight = std::nullopt);

}  // namespace orbikink
