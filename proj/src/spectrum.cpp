#include "orbitkit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace orbitkit {

Spectrum::Spectrum(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidInput("Spectrum: empty");
  double total = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const double v = entries_[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0 + kSpectrumTolerance) {
      std::ostringstream os;
      os << "Spectrum: entry " << i << " = " << v << " outside [0, 1]";
      throw InvalidInput(os.str());
    }
    if (i > 0 && v > entries_[i - 1]) {
      std::ostringstream os;
      os << "Spectrum: entries not sorted descending at index " << i;
      throw InvalidInput(os.str());
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kSpectrumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "Spectrum: entries sum to " << total << ", not 1";
    throw InvalidInput(os.str());
  }
}

Spectrum Spectrum::normalized(std::vector<double> values, double clamp_tol) {
  if (values.empty()) throw InvalidInput("Spectrum: empty");
  for (double& v : values) {
    if (!std::isfinite(v)) throw InvalidInput("Spectrum: non-finite entry");
    if (v < -clamp_tol) {
      std::ostringstream os;
      os << "Spectrum: negative entry " << v;
      throw InvalidInput(os.str());
    }
    v = std::max(v, 0.0);
  }
  const double total = std::accumulate(values.begin(), values.end(), 0.0);
  if (!(total > 0.0)) throw InvalidInput("Spectrum: entries sum to zero");
  for (double& v : values) v = std::min(v / total, 1.0);
  std::sort(values.begin(), values.end(), std::greater<>());
  return Spectrum(std::move(values));
}

Spectrum Spectrum::uniform(std::size_t dim) {
  return Spectrum(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

Spectrum Spectrum::pure(std::size_t dim) {
  std::vector<double> e(dim, 0.0);
  if (!e.empty()) e[0] = 1.0;
  return Spectrum(std::move(e));
}

RealVector Spectrum::as_vector() const {
  return Eigen::Map<const RealVector>(entries_.data(),
                                      static_cast<Eigen::Index>(entries_.size()));
}

double max_abs_difference(const Spectrum& a, const Spectrum& b) {
  if (a.size() != b.size()) throw InvalidInput("spectra have different lengths");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace orbitkit
