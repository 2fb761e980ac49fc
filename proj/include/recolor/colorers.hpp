#pragma once

#include <map>
#include <vector>

#include "recolor/graph.hpp"

namespace recolor {

// Contiguous color range reserved for one bucket. Bucket palettes are
// pairwise disjoint; the engines allocate them from a monotone counter so
// retired ranges are never handed out again.
struct Palette {
    Color base = 0;
    long long width = 0;
    bool growable = true;

    bool contains(Color c) const { return c >= base && c < base + width; }
};

class PaletteBook {
public:
    Palette alloc(long long width, bool growable = false)
    {
        Palette p{next_, width, growable};
        next_ += width;
        return p;
    }
    Color next_base() const { return next_; }

private:
    Color next_ = 0;
};

struct ColoringResult {
    std::map<VertexId, Color> colors;
    long long distinct_used = 0;
};

// First-fit over ascending vertex ids, lowest free palette color first.
// Uses at most max-degree-within-subset + 1 colors. Doubles the palette
// width when it runs out and growth is enabled.
ColoringResult color_greedy(const DynamicGraph& g, const std::vector<VertexId>& subset,
                            Palette& palette);

// BFS two-coloring per connected component of the induced subgraph.
// Component roots are the smallest ids; even layers take palette color 0,
// odd layers color 1. Throws OddCycleDetected on non-bipartite input.
ColoringResult color_bipartite(const DynamicGraph& g, const std::vector<VertexId>& subset,
                               Palette& palette);

// Exhaustive chromatic number of the induced subgraph; test oracle only.
// Throws TooLarge past the search budget.
int exact_chromatic(const DynamicGraph& g, const std::vector<VertexId>& subset,
                    int max_subset = 12);

enum class ColorerKind { Greedy, BipartiteBFS };

const char* colorer_kind_name(ColorerKind k);
ColorerKind colorer_kind_from_name(const std::string& name);

struct StaticColorer {
    ColorerKind kind = ColorerKind::Greedy;

    ColoringResult operator()(const DynamicGraph& g, const std::vector<VertexId>& subset,
                              Palette& palette) const
    {
        return kind == ColorerKind::Greedy ? color_greedy(g, subset, palette)
                                           : color_bipartite(g, subset, palette);
    }
};

} // namespace recolor
