// Field checkpoints and CSV helpers. Checkpoint format: header
// "index,theta,value", UTF-8, LF line endings, 17 significant digits.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "phase/manifold.hpp"

namespace phase {

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_number(line) {}
  int line_number;
};

void save_field(const std::string& path, const Field& u);

// Loads a checkpoint onto `grid`; throws ParseError on malformed input and
// std::invalid_argument on a size mismatch with the target grid.
Field load_field(const std::string& path, const SphereGrid& grid);

std::string format_double(double x);  // %.17g

// Write a CSV file: header line + rows, LF endings, 17 significant digits.
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace phase
