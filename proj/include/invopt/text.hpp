#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "invopt/vector.hpp"

namespace invopt {

// 17 significant digits; parses back to the identical double.
std::string format_double(double x);
double parse_double(std::string_view s);  // throws FormatError

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_fields(std::string_view s);  // on spaces, tabs and commas

std::string format_vector(const Vector& v, char sep = ',');
Vector parse_vector(std::string_view s);

}  // namespace invopt
