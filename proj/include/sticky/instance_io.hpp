// Instance documents (JSON) and CSV rendering helpers.
//
//   {
//     "particles": [{"x": 0, "m": 1, "v": 1, "theta": 0}, ...],
//     "t_end": 5,                       (optional)
//     "seed": 42,                       (optional)
//     "tolerances": {"abs": 1e-9, "rel": 1e-12, "event": 1e-9}   (optional)
//   }
//
// Unknown keys anywhere are rejected.

#pragma once

#include "sticky/core.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace sticky {

struct InstanceFile {
    InitialData data;
    std::optional<double> t_end;
    std::optional<std::uint64_t> seed;
    Tolerances tolerances;
};

// Throws Error(ParseError) for malformed documents and the validation error
// codes for invalid particles; messages carry the line number.
InstanceFile parse_instance(const std::string& text);
InstanceFile load_instance(const std::string& path);

std::string dump_instance(const InitialData& data, std::optional<double> t_end = {},
                          std::optional<std::uint64_t> seed = {},
                          std::optional<Tolerances> tolerances = {});

// 17 significant digits.
std::string format_real(double x);

}  // namespace sticky
