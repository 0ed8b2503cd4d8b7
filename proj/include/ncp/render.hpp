#pragma once

#include <string>

#include "ncp/apartments.hpp"
#include "ncp/chain.hpp"

namespace ncp {

// Points 1..n clockwise from the top; chords for two-element blocks,
// filled polygons for larger ones. Output is byte-stable.
std::string render_svg(const Partition& p);
// One panel per member, left to right in increasing rank.
std::string render_svg(const Chain& f);
std::string render_svg(const NcSpanningTree& tree);

}  // namespace ncp
