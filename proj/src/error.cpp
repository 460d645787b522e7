#include "shelfgaze/error.hpp"

namespace shelfgaze {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EyeBelowPanelBottom: return "EyeBelowPanelBottom";
        case ErrorCode::NoValidDistance: return "NoValidDistance";
        case ErrorCode::AllSamplesRejected: return "AllSamplesRejected";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::OutOfPanel: return "OutOfPanel";
        case ErrorCode::NoIntersection: return "NoIntersection";
        case ErrorCode::DegenerateEye: return "DegenerateEye";
        case ErrorCode::EmptyBatch: return "EmptyBatch";
        case ErrorCode::UnknownSetSize: return "UnknownSetSize";
    }
    return "Unknown";
}

}  // namespace shelfgaze
