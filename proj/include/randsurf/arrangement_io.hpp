#pragma once

// Line-oriented text format for arrangements:
//
//   surface P2 c1_sq=9 c2=3
//   blocks 1
//   flags line_arrangement=true
//   curve A0 genus=0 self_int=1 block=1 u=1
//   point A0 B0 C0
//
// '#' starts a comment. Surface names may contain spaces; the numeric fields
// are the last two tokens. Parse errors carry the 1-based line number.

#include "randsurf/arrangement.hpp"

#include <string>
#include <string_view>

namespace randsurf {

/// Syntax only; call validate() for structure.
Arrangement parse_arrangement(std::string_view text);

/// Canonical form: fixed field order, declaration order preserved.
std::string serialize_arrangement(const Arrangement& a);

Arrangement read_arrangement_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

} // namespace randsurf
