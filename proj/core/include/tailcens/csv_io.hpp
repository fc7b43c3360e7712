#pragma once

#include <iosfwd>
#include <string>

#include "tailcens/censoring.hpp"

namespace tailcens {

// Reads a censored sample from CSV with header "z,delta", one observation
// per row, z positive and delta 0 or 1. Malformed content throws
// validation_error naming the first offending line.
CensoredSample read_censored_csv(std::istream& in);
CensoredSample read_censored_csv_file(const std::string& path);

void write_censored_csv(std::ostream& out, const CensoredSample& sample);

}  // namespace tailcens
