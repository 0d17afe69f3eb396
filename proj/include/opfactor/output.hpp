#pragma once

// Flat-file tables. CSV carries a header row; JSON is
// {"config": {...}, "columns": [...], "rows": [[...], ...]}. Numbers are
// written with 17 significant digits so they round-trip exactly.

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "opfactor/grid.hpp"

namespace opfactor {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);
std::string to_string(OutputFormat f);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json config = nlohmann::json::object();
};

void write_table(std::ostream& out, const Table& table, OutputFormat format);
void write_table(const std::string& path, const Table& table, OutputFormat format);

/// Parses either format; the format is detected from the first character.
Table read_table(std::istream& in);
Table read_table(const std::string& path);

/// Columns x, re, im, density.
Table wavefunction_table(const WaveFunction& psi);

/// Rebuilds a wavefunction from a wavefunction_table; the grid is recovered
/// from the x column (spacing from the first two points).
WaveFunction wavefunction_from_table(const Table& table);

}  // namespace opfactor
