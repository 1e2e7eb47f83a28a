#pragma once

#include <string>
#include <vector>

#include "fracgreedy/config.hpp"
#include "fracgreedy/metrics.hpp"

namespace fracgreedy {

// Three significant digits, C-locale scientific notation ("2.28e-01").
std::string format_sci3(double v);
// Shortest round-trip decimal.
std::string format_full(double v);

// Header is always
//   N,loss,loss_order,l2,l2_order,h1,h1_order,linf,linf_order
// (pipe-separated for markdown). Values carry 3 significant digits.
std::string render_table(const std::vector<IterationRecord>& records, OutputFormat format);
// Full-precision CSV used as the sidecar.
std::string render_table_full(const std::vector<IterationRecord>& records);

// Write through <path>.tmp + rename; the target never holds partial content.
void atomic_write(const std::string& path, const std::string& content);

// foo.csv -> foo.full.csv (always .csv, whatever the table extension).
std::string sidecar_path(const std::string& table_path);

}  // namespace fracgreedy
