#pragma once

#include <iosfwd>

#include <nlohmann/json.hpp>

namespace cartan {

/// Compact JSON with every floating-point number printed as %.17g;
/// non-finite numbers become null.
void write_json(std::ostream& out, const nlohmann::json& value);

}  // namespace cartan
