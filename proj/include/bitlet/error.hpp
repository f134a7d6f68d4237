#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bitlet {

enum class ErrorCode {
    InvalidParameter,
    UnsupportedWidth,
    Unsupported,
    ColumnOverflow,
    RowOverflow,
    InvalidProgram,
    UnknownParameter,
    ParseError,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; the code tells
// callers (the CLI in particular) which category of input was rejected.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace bitlet
