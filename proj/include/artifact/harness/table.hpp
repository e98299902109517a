#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "artifact/harness/config.hpp"

namespace artifact::harness {

// A result table: named columns, string cells (numerics pre-formatted with
// format_double so output is byte-stable), and a metadata preamble.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);

  // Convenience for all-numeric rows.
  void add_row(const std::vector<double>& values);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string cell(std::size_t row, const std::string& column) const;

  // CSV with '#' preamble: config hash, seed, version.
  void write_csv(std::ostream& os, const Config& cfg) const;
  std::string to_csv(const Config& cfg) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes the table to cfg.out (or stdout when empty) and, for file output,
// drops the resolved config next to it as '<out>.config'.
void deliver(const ResultTable& table, const Config& cfg);

}  // namespace artifact::harness
