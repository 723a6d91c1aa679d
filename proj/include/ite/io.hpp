#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace ite {

// 17 significant digits; round-trips every finite double.
std::string format_double(double v);

// JSON text with every floating-point number written by format_double and
// non-finite numbers written as null.  Object keys keep nlohmann's order.
std::string dump_json(const nlohmann::json& j, int indent = 2);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace ite
