#pragma once

#include <span>
#include <string>

#include "plsa/alignment.hpp"

namespace plsa {

/// Static figure of an alignment: every chain as a polyline projected onto
/// the plane of maximal spread (top two principal axes), the common chain
/// dashed, and one <line class="match"> per distinct (chain 0, chain c)
/// vertex pairing along the walk.
std::string emit_alignment_svg(const AlignmentResult& result, std::span<const Chain3D> chains);

}  // namespace plsa
