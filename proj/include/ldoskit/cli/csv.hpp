#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldoskit::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kCsvHeader = "# ldos-kit v0.1.0";

/// One spectrum sample as written to disk.
struct SpectrumRow {
  double energy_ev = 0.0;
  std::complex<double> g{};  // 1/m^3
  double purcell = 0.0;
  long steps = 0;
  double residual = 0.0;
  std::string flag = "ok";  // ok | not_decayed | analytic
};

/// A spectrum plus the provenance shared by all its rows.
struct SpectrumTable {
  std::string scenario_hash;
  double delta_nm = 0.0;
  std::vector<SpectrumRow> rows;

  const SpectrumRow& peak() const;
};

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Version line, column line, then one row per sample with %.8e numbers
/// (9 significant digits). The text depends only on the table contents.
std::string format_csv(const SpectrumTable& t);

/// Writes to path + ".tmp" and renames into place. Creates parent directories.
void write_text_atomic(const std::string& path, const std::string& text);
void write_csv(const std::string& path, const SpectrumTable& t);

/// Rejects unknown versions, missing columns and rows with mixed provenance.
SpectrumTable parse_csv(const std::string& text);
SpectrumTable read_csv(const std::string& path);

struct CompareReport {
  std::size_t points = 0;
  double max_rel = 0.0;
  double median_rel = 0.0;
  double worst_energy_ev = 0.0;
  double tol = 0.0;
  bool pass = false;
};

/// Relative Purcell deviation |a - b| / |b| per energy. Throws CsvError when
/// the energy grids differ.
CompareReport compare(const SpectrumTable& a, const SpectrumTable& b, double tol);

}  // namespace ldoskit::cli
