#include "cartan/json_io.hpp"

#include <cmath>
#include <ostream>

#include "cartan/scan.hpp"

namespace cartan {

void write_json(std::ostream& out, const nlohmann::json& value) {
    using nlohmann::json;
    switch (value.type()) {
        case json::value_t::object: {
            out << '{';
            bool first = true;
            for (const auto& [key, item] : value.items()) {
                if (!first) out << ',';
                first = false;
                out << json(key).dump() << ':';
                write_json(out, item);
            }
            out << '}';
            break;
        }
        case json::value_t::array: {
            out << '[';
            bool first = true;
            for (const auto& item : value) {
                if (!first) out << ',';
                first = false;
                write_json(out, item);
            }
            out << ']';
            break;
        }
        case json::value_t::number_float: {
            const double v = value.get<double>();
            if (std::isfinite(v))
                out << format_real(v);
            else
                out << "null";
            break;
        }
        default:
            out << value.dump();
    }
}

}  // namespace cartan
