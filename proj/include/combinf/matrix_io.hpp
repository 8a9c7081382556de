#pragma once

// CSV matrices, label lists and twin cohort manifests.

#include "combinf/connectivity.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace combinf {

/// Parses a square numeric CSV grid. A first row containing any
/// non-numeric cell is taken as a header of node labels; otherwise labels
/// default to N1..Np. Throws DataError with 1-based row/column positions.
ConnectivityMatrix read_matrix_csv(std::istream& in, double symmetry_tolerance = kDefaultSymmetryTolerance,
                                   const std::string& source = "<stream>");
ConnectivityMatrix read_matrix_csv(const std::filesystem::path& path,
                                   double symmetry_tolerance = kDefaultSymmetryTolerance);

/// Header row of labels, then one row per node. Values use the shortest
/// decimal form that reads back to the same double.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& labels, const Matrix& m);
void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& labels,
                      const Matrix& m);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Labels separated by newlines and/or commas; blanks are dropped.
std::vector<std::string> read_label_file(const std::filesystem::path& path);

/// {"labels_from": optional path, "pairs": [{"a": path, "b": path}, ...]}.
/// Relative paths resolve against the manifest's directory. Labels from
/// `labels_from` override whatever the matrix files carry. Throws DataError
/// naming the offending file.
TwinCohort load_cohort_manifest(const std::filesystem::path& manifest,
                                double symmetry_tolerance = kDefaultSymmetryTolerance);

}  // namespace combinf
