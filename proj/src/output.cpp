#include "opfactor/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "opfactor/errors.hpp"

namespace opfactor {

namespace {
std::string format_number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(line);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  while (first != last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) throw std::runtime_error("bad number in table: '" + text + "'");
  return v;
}

std::size_t column_index(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  throw std::runtime_error("table has no column '" + name + "'");
}
}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

void write_table(std::ostream& out, const Table& table, OutputFormat format) {
  if (format == OutputFormat::csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
      out << '\n';
    }
    return;
  }
  // Rows are written by hand so every number carries 17 significant digits;
  // nlohmann would print the shortest round-trip form instead.
  out << "{\"config\":" << table.config.dump() << ",\"columns\":" << nlohmann::json(table.columns).dump()
      << ",\"rows\":[";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? "," : "") << '[';
    const auto& row = table.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!std::isfinite(row[i])) throw std::runtime_error("non-finite value cannot be written as JSON");
      out << (i ? "," : "") << format_number(row[i]);
    }
    out << ']';
  }
  out << "]}\n";
}

void write_table(const std::string& path, const Table& table, OutputFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_table(out, table, format);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Table read_table(std::istream& in) {
  in >> std::ws;
  Table table;
  if (in.peek() == '{') {
    const auto doc = nlohmann::json::parse(in);
    table.config = doc.value("config", nlohmann::json::object());
    table.columns = doc.at("columns").get<std::vector<std::string>>();
    table.rows = doc.at("rows").get<std::vector<std::vector<double>>>();
    return table;
  }
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty table");
  table.columns = split(line, ',');
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) row.push_back(parse_number(cell));
    if (row.size() != table.columns.size()) throw std::runtime_error("ragged row in table");
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_table(in);
}

Table wavefunction_table(const WaveFunction& psi) {
  Table t;
  t.columns = {"x", "re", "im", "density"};
  t.rows.reserve(psi.size());
  const auto& grid = psi.grid();
  for (std::size_t j = 0; j < psi.size(); ++j)
    t.rows.push_back({grid.x(j), psi[j].real(), psi[j].imag(), std::norm(psi[j])});
  t.config["grid_min"] = grid.x_min();
  t.config["grid_max"] = grid.x_max();
  t.config["grid_n"] = grid.size();
  return t;
}

WaveFunction wavefunction_from_table(const Table& table) {
  const auto ix = column_index(table, "x");
  const auto ir = column_index(table, "re");
  const auto ii = column_index(table, "im");
  const std::size_t n = table.rows.size();
  if (n < 2) throw std::runtime_error("wavefunction table needs at least two rows");

  double x_min = table.rows.front()[ix];
  double x_max = x_min + (table.rows[1][ix] - x_min) * static_cast<double>(n);
  if (table.config.contains("grid_min") && table.config.contains("grid_max")) {
    x_min = table.config["grid_min"].get<double>();
    x_max = table.config["grid_max"].get<double>();
  }
  std::vector<cplx> samples(n);
  for (std::size_t j = 0; j < n; ++j) samples[j] = {table.rows[j][ir], table.rows[j][ii]};
  return WaveFunction(Grid(x_min, x_max, n), std::move(samples));
}

}  // namespace opfactor
