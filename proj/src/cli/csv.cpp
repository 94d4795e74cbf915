#include "ldoskit/cli/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ldoskit/cli/config.hpp"

namespace ldoskit::cli {

namespace {

constexpr const char* kColumns = "energy_ev,re_G,im_G,purcell,scenario_hash,delta_nm,steps,residual,flag";

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CsvError("line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
}

}  // namespace

const SpectrumRow& SpectrumTable::peak() const {
  if (rows.empty()) throw CsvError("empty spectrum");
  return *std::max_element(rows.begin(), rows.end(),
                           [](const SpectrumRow& a, const SpectrumRow& b) { return a.purcell < b.purcell; });
}

std::string format_csv(const SpectrumTable& t) {
  std::string out = std::string(kCsvHeader) + "\n" + kColumns + "\n";
  for (const auto& r : t.rows) {
    out += sci(r.energy_ev) + "," + sci(r.g.real()) + "," + sci(r.g.imag()) + "," + sci(r.purcell) + "," +
           t.scenario_hash + "," + sci(t.delta_nm) + "," + std::to_string(r.steps) + "," + sci(r.residual) + "," +
           r.flag + "\n";
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp);
    os << text;
    os.flush();
    if (!os) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void write_csv(const std::string& path, const SpectrumTable& t) { write_text_atomic(path, format_csv(t)); }

SpectrumTable parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line.rfind("# ldos-kit v", 0) != 0) throw CsvError("missing '# ldos-kit v' header");
  if (line != kCsvHeader) throw CsvError("unknown version line '" + line + "'");
  if (!std::getline(is, line) || line != kColumns) throw CsvError("unexpected column line '" + line + "'");
  SpectrumTable t;
  std::size_t n = 2;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 9) throw CsvError("line " + std::to_string(n) + ": expected 9 columns");
    SpectrumRow r;
    r.energy_ev = to_double(c[0], n);
    r.g = {to_double(c[1], n), to_double(c[2], n)};
    r.purcell = to_double(c[3], n);
    const double delta = to_double(c[5], n);
    r.steps = static_cast<long>(to_double(c[6], n));
    r.residual = to_double(c[7], n);
    r.flag = c[8];
    if (t.rows.empty()) {
      t.scenario_hash = c[4];
      t.delta_nm = delta;
    } else if (c[4] != t.scenario_hash || delta != t.delta_nm) {
      throw CsvError("line " + std::to_string(n) + ": provenance differs from the first row");
    }
    t.rows.push_back(r);
  }
  if (t.rows.empty()) throw CsvError("no data rows");
  return t;
}

SpectrumTable read_csv(const std::string& path) {
  try {
    return parse_csv(read_text_file(path));
  } catch (const CsvError& e) {
    throw CsvError(path + ": " + e.what());
  }
}

CompareReport compare(const SpectrumTable& a, const SpectrumTable& b, double tol) {
  if (a.rows.size() != b.rows.size()) {
    throw CsvError("frequency grids differ: " + std::to_string(a.rows.size()) + " vs " +
                   std::to_string(b.rows.size()) + " points");
  }
  CompareReport rep;
  rep.tol = tol;
  rep.points = a.rows.size();
  std::vector<double> dev;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const double ea = a.rows[i].energy_ev, eb = b.rows[i].energy_ev;
    if (std::abs(ea - eb) > 1e-7 * std::max(std::abs(ea), std::abs(eb))) {
      throw CsvError("frequency grids differ at row " + std::to_string(i) + ": " + sci(ea) + " vs " + sci(eb));
    }
    const double ref = std::abs(b.rows[i].purcell);
    const double d = a.rows[i].purcell == b.rows[i].purcell ? 0.0 : std::abs(a.rows[i].purcell - b.rows[i].purcell) / ref;
    if (dev.empty() || d > rep.max_rel) {
      rep.max_rel = d;
      rep.worst_energy_ev = ea;
    }
    dev.push_back(d);
  }
  if (!dev.empty()) {
    std::sort(dev.begin(), dev.end());
    const std::size_t m = dev.size() / 2;
    rep.median_rel = dev.size() % 2 ? dev[m] : 0.5 * (dev[m - 1] + dev[m]);
  }
  rep.pass = rep.max_rel <= tol;
  return rep;
}

}  // namespace ldoskit::cli
