#pragma once

#include <vector>

namespace gausspid {

double mean(const std::vector<double>& xs);
double sample_sd(const std::vector<double>& xs);  // 1/(n-1) normalization
double median(std::vector<double> xs);

/// Least-squares slope of log(y) against log(x). Inputs must be positive.
double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace gausspid
