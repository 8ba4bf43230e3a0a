#pragma once

// Internal helpers for moving arbitrary-precision integers through JSON:
// values that fit in int64 travel as numbers, anything larger as a decimal
// string.

#include "json.hpp"
#include "toralg/arith.hpp"

#include <limits>
#include <string>

namespace toralg {

inline nlohmann::ordered_json json_int(const Int& x) {
    static const Int lo = Int(std::numeric_limits<long long>::min());
    static const Int hi = Int(std::numeric_limits<long long>::max());
    if (x >= lo && x <= hi) return x.convert_to<long long>();
    return x.str();
}

template <typename JsonT>
Int int_from_json(const JsonT& j) {
    if (j.is_string()) return Int(j.template get<std::string>());
    if (j.is_number_integer()) return Int(j.template get<long long>());
    if (j.is_number_unsigned()) return Int(j.template get<unsigned long long>());
    throw DomainError("expected an integer value");
}

}  // namespace toralg
