#include "csv.hpp"

#include <cbw/types.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cbw::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const double ax = std::abs(x);
  if (ax >= 1e6 || ax < 1e-4) {
    std::snprintf(buf, sizeof buf, "%.11e", x);
  } else {
    const int exponent = static_cast<int>(std::floor(std::log10(ax)));
    std::snprintf(buf, sizeof buf, "%.*f", std::max(0, 11 - exponent), x);
  }
  return buf;
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

void write_csv(const Table& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_csv(t, out);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty csv");
  std::istringstream header(line);
  for (std::string cell; std::getline(header, cell, ',');) t.columns.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError("bad csv number '" + cell + "'");
      }
    }
    if (row.size() != t.columns.size()) throw InputError("csv row width mismatch");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return read_csv(in);
}

}  // namespace cbw::cli
