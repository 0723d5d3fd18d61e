#include "uqcal/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uqcal {

Grid Grid::defaults() {
  Grid g;
  for (int i = 0; i < 50; ++i) g.t_values.push_back(0.1 + 0.2 * i);
  for (int i = 0; i <= 5; ++i) g.c_values.push_back(0.1 * i);
  return g;
}

std::vector<double> Grid::parse_range(const std::string& spec) {
  auto p1 = spec.find(':');
  auto p2 = spec.find(':', p1 == std::string::npos ? p1 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw std::invalid_argument("grid range must be start:stop:step, got \"" +
                                spec + "\"");
  double start = std::stod(spec.substr(0, p1));
  double stop = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
  double step = std::stod(spec.substr(p2 + 1));
  if (step <= 0.0 || stop < start)
    throw std::invalid_argument("bad grid range \"" + spec + "\"");
  std::vector<double> values;
  for (int i = 0;; ++i) {
    double v = start + step * i;
    if (v > stop + step * 0.5) break;
    values.push_back(v);
  }
  return values;
}

void Grid::validate() const {
  auto ascending = [](const std::vector<double>& v, const char* name) {
    if (v.empty())
      throw std::invalid_argument(std::string(name) + " grid is empty");
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] <= v[i - 1])
        throw std::invalid_argument(std::string(name) +
                                    " grid is not strictly ascending");
  };
  ascending(t_values, "t");
  ascending(c_values, "c");
  if (t_values.front() <= 0.0)
    throw std::invalid_argument("t grid values must be positive");
  if (c_values.front() < 0.0)
    throw std::invalid_argument("c grid values must be non-negative");
}

double temp_scale(double conf, double t) {
  if (t <= 0.0) throw std::invalid_argument("temp_scale: T <= 0");
  if (conf == 0.0) return 0.0;
  return std::pow(conf, 1.0 / t);
}

double fused_confidence(double conf_baseline, double conf_gm,
                        const CalibrationParams& p) {
  double v = conf_baseline * temp_scale(conf_gm, p.t) + p.c;
  return std::clamp(v, 0.0, 1.0);
}

double fit_temperature(const std::vector<std::pair<double, double>>& validation,
                       const Grid& grid, unsigned m_bins) {
  if (validation.empty())
    throw std::invalid_argument("fit_temperature: empty validation set");
  grid.validate();
  double best_t = grid.t_values.front();
  double best_ece = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> scaled(validation.size());
  for (double t : grid.t_values) {
    for (std::size_t i = 0; i < validation.size(); ++i)
      scaled[i] = {temp_scale(validation[i].first, t), validation[i].second};
    double e = ece(scaled, m_bins).ece;
    if (e < best_ece) {  // strict: first (smallest) T wins ties
      best_ece = e;
      best_t = t;
    }
  }
  return best_t;
}

FusedFit fit_fused(const std::vector<FusionSample>& validation, const Grid& grid,
                   unsigned m_bins) {
  if (validation.empty())
    throw std::invalid_argument("fit_fused: empty validation set");
  grid.validate();
  FusedFit best;
  best.params = {grid.t_values.front(), grid.c_values.front()};
  best.validation_ece = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> fused(validation.size());
  for (double t : grid.t_values) {
    for (double c : grid.c_values) {
      CalibrationParams p{t, c};
      for (std::size_t i = 0; i < validation.size(); ++i)
        fused[i] = {fused_confidence(validation[i].conf_baseline,
                                     validation[i].conf_gm, p),
                    validation[i].accuracy};
      double e = ece(fused, m_bins).ece;
      if (e < best.validation_ece) {  // lexicographic (T, C) tie-break
        best.validation_ece = e;
        best.params = p;
      }
    }
  }
  return best;
}

}  // namespace uqcal
