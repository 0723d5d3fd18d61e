#pragma once

#include <string>
#include <vector>

#include "uqcal/metrics.hpp"

namespace uqcal {

struct CalibrationParams {
  double t = 1.0;  // temperature, > 0
  double c = 0.0;  // additive offset, >= 0
};

struct Grid {
  std::vector<double> t_values;  // strictly ascending, all > 0
  std::vector<double> c_values;  // strictly ascending, all >= 0

  // t: 0.1, 0.3, ..., 9.9; c: 0.0, 0.1, ..., 0.5
  static Grid defaults();
  // "start:stop:step" inclusive of stop (within half a step)
  static std::vector<double> parse_range(const std::string& spec);
  void validate() const;
};

// conf^(1/T); 0 maps to 0 for every T. Throws for T <= 0.
double temp_scale(double conf, double t);

// Eq: clamp(conf_baseline * conf_gm^(1/T) + C, 0, 1).
double fused_confidence(double conf_baseline, double conf_gm,
                        const CalibrationParams& p);

// Grid T minimizing ECE of the temperature-scaled confidences; ties go to
// the smallest T.
double fit_temperature(const std::vector<std::pair<double, double>>& validation,
                       const Grid& grid, unsigned m_bins);

struct FusedFit {
  CalibrationParams params;
  double validation_ece;
};

struct FusionSample {
  double conf_baseline;
  double conf_gm;
  double accuracy;
};

// Exhaustive search over t_values x c_values minimizing ECE of the fused
// confidences; ties go to smallest T, then smallest C.
FusedFit fit_fused(const std::vector<FusionSample>& validation, const Grid& grid,
                   unsigned m_bins);

}  // namespace uqcal
