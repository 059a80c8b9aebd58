#pragma once

#include <iosfwd>
#include <string>

#include "invopt/instances.hpp"

namespace invopt {

// Line-oriented stream format (one token group per line, '#' comments):
//
//   invopt-stream 1
//   dimension <n>
//   norms linf-l1|l2-l2
//   c_star <c_1> ... <c_n>            (optional)
//   c_star_integral <c_1> ... <c_n>   (optional)
//   round <t> explicit <count>
//   v <x_1> ... <x_n>                 (count lines)
//   round <t> hypercube
//   round <t> knapsack <capacity> <w_1> ... <w_n>
//   round <t> dag <num_nodes> <source> <sink>
//   a <from> <to>                     (n lines; arc i is coordinate i)
//   choice <x_1> ... <x_n>            (closes every round)
//
// Reals are written with 17 significant digits, so a round trip is exact.
void write_stream(std::ostream& out, const InstanceStream& stream);
InstanceStream read_stream(std::istream& in);

void save_stream(const std::string& path, const InstanceStream& stream);
InstanceStream load_stream(const std::string& path);

}  // namespace invopt
