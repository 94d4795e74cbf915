#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "ldoskit/analytic/green_sample.hpp"
#include "ldoskit/fdtd/engine.hpp"
#include "ldoskit/units.hpp"

namespace ldoskit::green {

/// Self-field record of one frequency: DFTs of the source-edge E and of the
/// injected current density.
struct ExtractionRecord {
  Frequency energy{};
  std::complex<double> e_src{};
  std::complex<double> j_src{};
  Length delta{};
  fdtd::Component component = fdtd::Component::z;
};

class SpectralFloorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// p = i J delta^3 / w and G = eps0 E / p. Throws SpectralFloorError when
/// |J| <= j_floor (or is zero).
GreenSample extract_gf(const ExtractionRecord& rec, double j_floor = 0.0);

/// Extracts every frequency of a run. The floor is rel_floor times the
/// largest |J| in the run.
std::vector<GreenSample> extract_run(const fdtd::RunResult& run, Length delta, fdtd::Component component,
                                     double rel_floor = 1e-4);

struct PurcellSpectrum {
  std::vector<GreenSample> samples;  // ascending energy
  std::size_t peak_index = 0;

  const GreenSample& peak() const { return samples.at(peak_index); }
};

/// Sorts by energy and marks the maximum Purcell factor. Throws
/// std::invalid_argument for an empty input.
PurcellSpectrum purcell_spectrum(std::vector<GreenSample> samples);

}  // namespace ldoskit::green
