#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace recolor {

// Vertex ids are caller-supplied non-negative integers. Internal storage is
// dense by id, so ids should stay reasonably compact.
using VertexId = int;

// Global color index. Palettes carve disjoint ranges out of the integer
// line and are never reused, so this can grow well past the vertex count.
using Color = long long;

constexpr Color kNoColor = -1;

enum class ErrorCode {
    UnknownVertex,
    DuplicateVertex,
    SelfLoop,
    DuplicateEdge,
    MissingEdge,
    UncoloredVertex,
    PaletteExhausted,
    OddCycleDetected,
    TooLarge,
    InvariantViolation,
    ParseError,
    ValidationError,
    NotTwoColored,
    ColorBudgetExceeded,
    ValidityExhausted,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what)
        , code_(code)
    {
    }

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace recolor
