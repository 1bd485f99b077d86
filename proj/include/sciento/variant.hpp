#pragma once

#include <string>
#include <string_view>

#include "sciento/errors.hpp"

namespace sciento {

/// Formula family. `standard` is the textbook definition of every metric;
/// `paper` switches on the legacy conventions some published tables use
/// (collaboration coefficients over the multi-authored population, RGR as
/// ln(cumulative) − ln(annual), critical value exponent/√N). One switch so
/// reproduction runs flip every affected metric together.
enum class Variant {
    standard,
    paper,
};

inline std::string to_string(Variant v) {
    return v == Variant::paper ? "paper" : "standard";
}

inline Variant variant_from_string(std::string_view s) {
    if (s == "standard") return Variant::standard;
    if (s == "paper") return Variant::paper;
    throw InputError("unknown variant '" + std::string(s) + "' (expected standard|paper)");
}

}  // namespace sciento
