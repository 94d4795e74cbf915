#include "ldoskit/green/extract.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ldoskit::green {

GreenSample extract_gf(const ExtractionRecord& rec, double j_floor) {
  const double mag = std::abs(rec.j_src);
  if (!(mag > j_floor) || mag == 0.0) {
    throw SpectralFloorError("source spectrum too weak at " + std::to_string(rec.energy.energy_ev) + " eV");
  }
  if (!(rec.delta.nanometers > 0.0)) throw std::invalid_argument("extract_gf: delta must be positive");
  const double w = ev_to_omega(rec.energy);
  const double d = rec.delta.meters();
  const std::complex<double> p = std::complex<double>(0.0, 1.0) * rec.j_src * (d * d * d) / w;
  return GreenSample::from_green(rec.energy, constants::eps0 * rec.e_src / p);
}

std::vector<GreenSample> extract_run(const fdtd::RunResult& run, Length delta, fdtd::Component component,
                                     double rel_floor) {
  double jmax = 0.0;
  for (const auto& j : run.j_src) jmax = std::max(jmax, std::abs(j));
  std::vector<GreenSample> out;
  out.reserve(run.energies.size());
  for (std::size_t f = 0; f < run.energies.size(); ++f) {
    out.push_back(extract_gf({run.energies[f], run.e_src[f], run.j_src[f], delta, component}, rel_floor * jmax));
  }
  return out;
}

PurcellSpectrum purcell_spectrum(std::vector<GreenSample> samples) {
  if (samples.empty()) throw std::invalid_argument("purcell_spectrum: no samples");
  std::stable_sort(samples.begin(), samples.end(),
                   [](const GreenSample& a, const GreenSample& b) { return a.energy < b.energy; });
  PurcellSpectrum s{std::move(samples), 0};
  for (std::size_t i = 1; i < s.samples.size(); ++i) {
    if (s.samples[i].purcell > s.samples[s.peak_index].purcell) s.peak_index = i;
  }
  return s;
}

}  // namespace ldoskit::green
