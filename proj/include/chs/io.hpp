#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chs/triangulation.hpp"

namespace chs {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses the JSON gluing table {"name": ..., "tets": [[null | [t, [p0,p1,p2,p3]], x4], ...]}.
/// Throws ParseError on malformed text, non-bijective permutations or
/// non-involutive gluings. Unglued faces are accepted.
Triangulation parse_triangulation(std::string_view text);

/// Compact serialization with keys in the order name, tets.
std::string serialize_triangulation(const Triangulation& tri);

Triangulation load_triangulation(const std::filesystem::path& path);
void save_triangulation(const Triangulation& tri, const std::filesystem::path& path);

}  // namespace chs
