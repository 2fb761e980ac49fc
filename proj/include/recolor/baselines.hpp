#pragma once

#include <memory>
#include <string>
#include <vector>

#include "recolor/graph.hpp"

namespace recolor {

struct Recoloring {
    VertexId v;
    Color old_color;
    Color new_color;
};

// An opponent for the adversary arena: maintains a proper coloring with
// colors drawn from {1..c} and reports every recoloring it performs.
class ColoringAlgorithm {
public:
    virtual ~ColoringAlgorithm() = default;

    virtual void init(const DynamicGraph& g) = 0;
    virtual std::vector<Recoloring> apply(const UpdateOp& op) = 0;
    virtual Color color_of(VertexId v) const = 0;
    virtual std::string name() const = 0;
    virtual const DynamicGraph& graph() const = 0;
};

enum class BaselineKind {
    ExactRepair, // minimum-recoloring repair (tree DP / small brute force)
    BfsFlip,     // 2-colorings: re-2-color the damaged component, cheaper side
    GreedyRepair // first-fit repair cascade with a DP fallback
};

const char* baseline_kind_name(BaselineKind k);
BaselineKind baseline_kind_from_name(const std::string& name);

std::unique_ptr<ColoringAlgorithm> make_baseline(BaselineKind kind, int c);

// Wraps a bucket engine as an arena opponent. The engines draw colors from
// disjoint palettes rather than {1..c}, so the arena rejects them with
// ColorBudgetExceeded unless c is generous; the adapter exists to exercise
// exactly that contract.
std::unique_ptr<ColoringAlgorithm> make_engine_opponent(const std::string& engine_name,
                                                        int d);

} // namespace recolor
