#include "oversparse/kind.hpp"

#include <algorithm>
#include <cctype>

#include "oversparse/error.hpp"

namespace oversparse {

std::string_view to_string(TransformKind kind) {
    switch (kind) {
        case TransformKind::DWT: return "dwt";
        case TransformKind::DT_COMPLEX: return "dt";
        case TransformKind::DD_DWT: return "dd";
        case TransformKind::DD_DT_REAL: return "ddt-real";
        case TransformKind::DD_DT_COMPLEX: return "ddt-complex";
    }
    return "?";
}

std::string_view display_name(TransformKind kind) {
    switch (kind) {
        case TransformKind::DWT: return "DWT";
        case TransformKind::DT_COMPLEX: return "DT-CoWT";
        case TransformKind::DD_DWT: return "DD-DWT";
        case TransformKind::DD_DT_REAL: return "Real DD-DT-DWT";
        case TransformKind::DD_DT_COMPLEX: return "Co DD-DT-DWT";
    }
    return "?";
}

TransformKind parse_kind(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto k : kAllKinds) {
        std::string disp(display_name(k));
        std::transform(disp.begin(), disp.end(), disp.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (lower == to_string(k) || lower == disp) return k;
    }
    if (lower == "dt-cowt" || lower == "dtcwt" || lower == "dt-complex") return TransformKind::DT_COMPLEX;
    if (lower == "dd-dwt") return TransformKind::DD_DWT;
    if (lower == "ddt" || lower == "dd-dt-dwt") return TransformKind::DD_DT_COMPLEX;
    throw ArgumentError("unknown transform kind '" + std::string(text) + "'");
}

int tree_count(TransformKind kind) {
    return (kind == TransformKind::DWT || kind == TransformKind::DD_DWT) ? 1 : 2;
}

int channel_count(TransformKind kind) {
    return (kind == TransformKind::DWT || kind == TransformKind::DT_COMPLEX) ? 2 : 3;
}

bool is_complex(TransformKind kind) {
    return kind == TransformKind::DT_COMPLEX || kind == TransformKind::DD_DT_COMPLEX;
}

}  // namespace oversparse
