#pragma once

// Text formats.
//
//   .fn   first line "n m", then 2^n whitespace-separated lowercase hex codes,
//         entry i being f at the point with code i.
//   .set  first line "n", then one lowercase hex code per line, strictly
//         ascending, no duplicates.
//
// Parse failures throw ParseError with a "line L, byte B" prefix, B being the
// zero-based offset into the whole text.

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "addcomb/gf2.hpp"
#include "addcomb/reduction.hpp"

namespace addcomb {

FnTable parse_fn(std::string_view text);
SubsetF2n parse_set(std::string_view text);
std::string format_fn(const FnTable& f);
std::string format_set(const SubsetF2n& s);

FnTable read_fn_file(const std::string& path);
SubsetF2n read_set_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

std::string hex(std::uint64_t v);

// {"dim":N, "quad":[hex rows], "lin":hex, "const":0|1}
nlohmann::ordered_json to_json(const QuadraticForm& q);
QuadraticForm quadratic_from_json(const nlohmann::ordered_json& j);

// FNV-1a 64-bit, hex encoded; identifies input files in reports.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace addcomb
