#pragma once

#include <cmath>
#include <functional>

namespace salbound {

struct ScaleInterval {
    double lower = 0.05;
    double upper = 20.0;
};

struct ScaleMinimum {
    double scale = 0.0;
    double value = 0.0;
    bool at_endpoint = false;
    int evaluations = 0;
};

/// Golden-section search for the minimum of f(s) over s in [lower, upper],
/// carried out in log s until the bracket is narrower than relative_tolerance.
/// Assumes f is unimodal on the interval. at_endpoint is set when the
/// minimizer is within two tolerances of either end.
ScaleMinimum minimize_log_scale(const std::function<double(double)>& f, ScaleInterval interval,
                                double relative_tolerance);

}  // namespace salbound
