#pragma once

// Text and file formats: element expressions, vector literals, complex
// numbers and JSON pair files.

#include <complex>
#include <istream>
#include <string>
#include <string_view>

#include "pythag/limitspace.hpp"
#include "pythag/pythagorean.hpp"
#include "pythag/thompson.hpp"

namespace pythag {

/// element ::= term+ ; term ::= "x" INT [ "^" SIGNED_INT ] | "[" tree "," tree "]"
/// "[T1,T2]" is from_pair(range = T1, domain = T2); juxtaposition multiplies
/// with the left factor applied last.
ThompsonElement parse_element(std::string_view text);

/// "1.5", "-2i", "0.5+0.25i", "1e-3-2e-1i", "i".
std::complex<double> parse_complex(std::string_view text);

/// "tree : v1 ; v2 ; ..." with each vi a comma-separated list of complex
/// entries, one vector per leaf in leaf order.
Vec parse_limit_vector(std::string_view text, std::shared_ptr<const Pair> pair);

/// {"dim": d, "A": [[[re,im],...],...], "B": ..., "tol": 1e-12} or the scalar
/// shorthand {"a": [re,im], "b": [re,im]}.
Pair parse_pair_json(std::string_view text);
Pair load_pair_file(const std::string& path);
std::string pair_to_json(const Pair& pair);

/// "re+imi" with six digits after the decimal point, e.g. "0.957107+0.000000i".
std::string format_complex(std::complex<double> z);

/// "%.1e"-style without exponent padding, e.g. "0.0e0", "2.2e-16".
std::string format_short_sci(double x);

}  // namespace pythag
