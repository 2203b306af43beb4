#pragma once

#include <iosfwd>
#include <vector>

#include "addcomb/harness.hpp"

namespace addcomb::cli {

// Static SVG scatter of sweep exponents against log |A|, one colour per
// family. Rows with a NaN exponent are left out.
void write_exponent_svg(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace addcomb::cli
