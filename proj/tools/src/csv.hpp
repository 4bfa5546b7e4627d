#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cbw::cli {

// 12 significant digits; scientific when |x| >= 1e6 or 0 < |x| < 1e-4.
std::string format_number(double x);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(const Table& t, std::ostream& out);
// Throws IoError when the path cannot be written.
void write_csv(const Table& t, const std::filesystem::path& path);
// Throws InputError on malformed content.
Table read_csv(std::istream& in);
Table read_csv(const std::filesystem::path& path);

}  // namespace cbw::cli
