#pragma once

#include "combinf/exact_inference.hpp"

#include <iosfwd>
#include <string>

namespace combinf {

/// Two edges-added step curves (first solid, second dashed) with a
/// vertical marker at `marker`. Output is a pure function of the inputs.
void write_growth_svg(std::ostream& out, const MonotoneSequence& first,
                      const MonotoneSequence& second, const std::string& first_name,
                      const std::string& second_name, double marker);

/// weight,<first_name>,<second_name> rows: both step functions evaluated at
/// every distinct merged weight.
void write_growth_csv(std::ostream& out, const MonotoneSequence& first,
                      const MonotoneSequence& second, const std::string& first_name,
                      const std::string& second_name);

}  // namespace combinf
