#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dplab/experiments.hpp"

namespace dplab {

namespace {

std::string join_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += cells[k];
  }
  return line;
}

std::string gp_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& w) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  w(out);
  if (!out) throw std::runtime_error(fmt::format("write failed for {}", path.string()));
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  os << join_row(table.columns) << '\n';
  for (const auto& row : table.rows) os << join_row(row) << '\n';
}

void write_report(std::ostream& os, const ExperimentResult& result) {
  fmt::print(os, "experiment: {}\n", result.kind);
  fmt::print(os, "rows: {}\n\n", result.table.rows.size());
  for (const auto& c : result.checks) {
    fmt::print(os, "{}  {}: {} {} {}\n", c.pass ? "PASS" : "FAIL", c.name, c.value, c.relation, c.limit);
  }
  if (!result.notes.empty()) {
    os << '\n';
    for (const auto& n : result.notes) fmt::print(os, "note: {}\n", n);
  }
  fmt::print(os, "\noverall: {}\n", result.passed() ? "PASS" : "FAIL");
}

void write_plot_script(std::ostream& os, const ExperimentResult& result, const std::string& csv_name) {
  const auto& p = result.plot;
  os << "# gnuplot script; reads only " << csv_name << "\n";
  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  os << "set terminal pngcairo size 900,600\n";
  os << "set output 'plot.png'\n";
  os << "set title " << gp_quote(p.title) << "\n";
  os << "set xlabel " << gp_quote(p.x) << "\n";
  os << "set ylabel " << gp_quote(p.y) << "\n";
  if (p.logx) os << "set logscale x\n";
  if (p.logy) os << "set logscale y\n";
  os << "plot " << gp_quote(csv_name) << " using " << gp_quote(p.x) << ":" << gp_quote(p.y)
     << " with linespoints title " << gp_quote(p.y) << "\n";
}

void write_outputs(const std::filesystem::path& dir, const ExperimentResult& result) {
  std::filesystem::create_directories(dir);
  write_file(dir / "results.csv", [&](std::ostream& os) { write_csv(os, result.table); });
  write_file(dir / "report.txt", [&](std::ostream& os) { write_report(os, result); });
  write_file(dir / "plot.gp", [&](std::ostream& os) { write_plot_script(os, result); });
}

}  // namespace dplab
