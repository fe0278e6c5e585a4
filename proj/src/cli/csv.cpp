#include <cstdlib>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "zenolab/cli.hpp"
#include "zenolab/error.hpp"

namespace zenolab::cli {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw Error(ErrorCode::InvalidState, "CSV row width does not match the header");
  rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream& os) const {
  for (const auto& c : comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
}

CsvTable CsvTable::read(std::istream& is) {
  CsvTable t;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (!header) {
      t.columns = std::move(cells);
      header = true;
    } else {
      t.add_row(std::move(cells));
    }
  }
  return t;
}

std::size_t CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw Error(ErrorCode::DomainError, "no CSV column named '" + name + "'");
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
  const std::size_t k = column_index(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) {
    // strtod, unlike stod, hands back subnormal values instead of throwing.
    char* end = nullptr;
    const double x = std::strtod(r[k].c_str(), &end);
    if (r[k].empty() || end != r[k].c_str() + r[k].size()) throw Error(ErrorCode::DomainError, "non-numeric cell '" + r[k] + "'");
    v.push_back(x);
  }
  return v;
}

}  // namespace zenolab::cli
