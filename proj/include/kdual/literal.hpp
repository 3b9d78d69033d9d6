#pragma once

#include <string_view>

#include "kdual/fga.hpp"
#include "kdual/int_matrix.hpp"

namespace kdual {

/// Group literal: term ("+" term)*, term in {Z, Z^k (k >= 1), Z/n (n >= 2), 0}.
/// Whitespace-insensitive; composite n is split by CRT. Throws ParseError.
FgaGroup parse_group(std::string_view text);

/// Element literal "(t1,...,tm; f1,...,fr)" in canonical factor order of `shape`;
/// either side may be empty. Residues are reduced. Throws ParseError on syntax
/// or arity errors.
GroupElement parse_element(std::string_view text, const FgaGroup& shape);

/// Matrix literal "[[2,4],[6,8]]"; "[]" is the empty matrix. Throws ParseError.
IntMatrix parse_matrix(std::string_view text);

}  // namespace kdual
