#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sunfluct {

// Shortest decimal form that round-trips a double (%.17g fallback).
std::string format_double(double v);

std::vector<std::string> split_ws(std::string_view line);
std::vector<std::string> split_char(std::string_view line, char sep);

// FNV-1a 64-bit, used for the run manifest content digests.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace sunfluct
