#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace shelfgaze {

enum class ErrorCode {
    InvalidArgument,
    EyeBelowPanelBottom,
    NoValidDistance,
    AllSamplesRejected,
    IndexOutOfRange,
    OutOfPanel,
    NoIntersection,
    DegenerateEye,
    EmptyBatch,
    UnknownSetSize,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
/// InvalidArgument marks a broken precondition (bad input); every other
/// code is a domain outcome the caller may want to report as data.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    bool is_input_error() const noexcept { return code_ == ErrorCode::InvalidArgument; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool condition, const std::string& what) {
    if (!condition) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace shelfgaze
