#include "artifact/harness/table.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace artifact::harness {

ResultTable::ResultTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("ResultTable: no columns");
}

void ResultTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("ResultTable: row width mismatch");
  rows_.push_back(std::move(cells));
}

void ResultTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  add_row(std::move(cells));
}

std::string ResultTable::cell(std::size_t row, const std::string& column) const {
  for (std::size_t c = 0; c < columns_.size(); ++c)
    if (columns_[c] == column) return rows_.at(row).at(c);
  throw std::out_of_range("ResultTable: no column '" + column + "'");
}

void ResultTable::write_csv(std::ostream& os, const Config& cfg) const {
  std::ostringstream hash;
  hash << std::hex << config_hash(cfg);
  os << "# version=" << kVersion << "\n";
  os << "# config_hash=" << hash.str() << "\n";
  os << "# seed=" << cfg.base_seed << "\n";
  os << "# scenario=" << cfg.scenario << "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c)
    os << (c ? "," : "") << columns_[c];
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
    os << "\n";
  }
}

std::string ResultTable::to_csv(const Config& cfg) const {
  std::ostringstream os;
  write_csv(os, cfg);
  return os.str();
}

void deliver(const ResultTable& table, const Config& cfg) {
  if (cfg.out.empty()) {
    table.write_csv(std::cout, cfg);
    return;
  }
  std::ofstream os(cfg.out);
  if (!os) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
  table.write_csv(os, cfg);
  std::ofstream echo(cfg.out + ".config");
  if (!echo)
    throw std::runtime_error("cannot open config echo '" + cfg.out + ".config'");
  echo << emit_config(cfg);
}

}  // namespace artifact::harness
