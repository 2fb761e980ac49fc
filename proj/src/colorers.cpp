#include "recolor/colorers.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace recolor {

const char* colorer_kind_name(ColorerKind k)
{
    return k == ColorerKind::Greedy ? "greedy" : "bipartite";
}

ColorerKind colorer_kind_from_name(const std::string& name)
{
    if (name == "greedy")
        return ColorerKind::Greedy;
    if (name == "bipartite")
        return ColorerKind::BipartiteBFS;
    throw Error(ErrorCode::ValidationError, "unknown colorer '" + name + "'");
}

namespace {
    void grow_to(Palette& palette, long long needed)
    {
        if (needed <= palette.width)
            return;
        if (!palette.growable)
            throw Error(ErrorCode::PaletteExhausted,
                        "need " + std::to_string(needed) + " colors, width "
                            + std::to_string(palette.width));
        long long w = std::max<long long>(palette.width, 1);
        while (w < needed)
            w *= 2;
        palette.width = w;
    }

    bool in_subset(const std::vector<VertexId>& subset, VertexId v)
    {
        return std::binary_search(subset.begin(), subset.end(), v);
    }
} // namespace

ColoringResult color_greedy(const DynamicGraph& g, const std::vector<VertexId>& subset,
                            Palette& palette)
{
    ColoringResult result;
    std::set<long long> used_indices;
    std::vector<long long> taken;
    for (VertexId v : subset) {
        if (!g.has_vertex(v))
            throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v));
        taken.clear();
        for (VertexId u : g.neighbors(v)) {
            auto it = result.colors.find(u);
            if (it != result.colors.end())
                taken.push_back(it->second - palette.base);
        }
        std::sort(taken.begin(), taken.end());
        long long idx = 0;
        for (long long t : taken) {
            if (t == idx)
                ++idx;
            else if (t > idx)
                break;
        }
        grow_to(palette, idx + 1);
        result.colors[v] = palette.base + idx;
        used_indices.insert(idx);
    }
    result.distinct_used = (long long)used_indices.size();
    return result;
}

ColoringResult color_bipartite(const DynamicGraph& g, const std::vector<VertexId>& subset,
                               Palette& palette)
{
    ColoringResult result;
    if (subset.empty())
        return result;
    grow_to(palette, std::min<long long>(2, (long long)subset.size()));
    std::map<VertexId, int> side;
    std::deque<VertexId> queue;
    for (VertexId root : subset) {
        if (side.count(root))
            continue;
        side[root] = 0;
        queue.push_back(root);
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            for (VertexId u : g.neighbors(v)) {
                if (!in_subset(subset, u))
                    continue;
                auto it = side.find(u);
                if (it == side.end()) {
                    side[u] = side[v] ^ 1;
                    queue.push_back(u);
                } else if (it->second == side[v]) {
                    throw Error(ErrorCode::OddCycleDetected,
                                "edge " + std::to_string(v) + "-" + std::to_string(u));
                }
            }
        }
    }
    std::set<long long> used;
    for (const auto& [v, s] : side) {
        result.colors[v] = palette.base + s;
        used.insert(s);
    }
    result.distinct_used = (long long)used.size();
    return result;
}

namespace {
    bool colorable_with(const std::vector<std::vector<int>>& adj, int k)
    {
        int n = (int)adj.size();
        std::vector<int> color(n, -1);
        // vertex i may use colors 0..min(i, k-1); breaks color symmetry
        int i = 0;
        while (true) {
            if (i == n)
                return true;
            int limit = std::min(i, k - 1);
            int c = color[i] + 1;
            bool placed = false;
            for (; c <= limit; ++c) {
                bool ok = true;
                for (int j : adj[i])
                    if (j < i && color[j] == c) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    color[i] = c;
                    placed = true;
                    break;
                }
            }
            if (placed) {
                ++i;
                if (i < n)
                    color[i] = -1;
            } else {
                color[i] = -1;
                --i;
                if (i < 0)
                    return false;
            }
        }
    }
} // namespace

int exact_chromatic(const DynamicGraph& g, const std::vector<VertexId>& subset,
                    int max_subset)
{
    if ((int)subset.size() > max_subset)
        throw Error(ErrorCode::TooLarge,
                    std::to_string(subset.size()) + " vertices exceeds budget of "
                        + std::to_string(max_subset));
    if (subset.empty())
        return 0;
    int n = (int)subset.size();
    std::map<VertexId, int> index;
    for (int i = 0; i < n; ++i)
        index[subset[i]] = i;
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (VertexId u : g.neighbors(subset[i])) {
            auto it = index.find(u);
            if (it != index.end())
                adj[i].push_back(it->second);
        }
    for (int k = 1; k <= n; ++k)
        if (colorable_with(adj, k))
            return k;
    return n;
}

} // namespace recolor
