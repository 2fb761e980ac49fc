#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recolor/graph.hpp"

namespace recolor {

// Update-stream text format, one op per line, '#' starts a comment:
//   av <id> <nbr>*   insert vertex with incident edges
//   rv <id>          delete vertex
//   ae <u> <v>       insert edge
//   re <u> <v>       delete edge
std::vector<UpdateOp> parse_stream(const std::string& text);
std::vector<UpdateOp> parse_stream_file(const std::string& path);
std::string format_stream(const std::vector<UpdateOp>& ops);

struct RandomStreamConfig {
    std::uint64_t seed = 1;
    int updates = 1000;
    int max_vertices = 100;
    bool forest_only = false;
    // Relative weights of the four op kinds.
    int w_insert_vertex = 4;
    int w_delete_vertex = 1;
    int w_insert_edge = 4;
    int w_delete_edge = 2;
};

// Deterministic update-stream generator; same config, same stream.
std::vector<UpdateOp> random_stream(const RandomStreamConfig& cfg);

} // namespace recolor
