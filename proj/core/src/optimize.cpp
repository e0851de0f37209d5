#include "salbound/optimize.hpp"

#include <string>

#include "salbound/errors.hpp"

namespace salbound {

ScaleMinimum minimize_log_scale(const std::function<double(double)>& f, ScaleInterval interval,
                                double relative_tolerance) {
    if (!(interval.lower > 0.0) || !(interval.upper > interval.lower)) {
        throw DomainError("scale interval must satisfy 0 < lower < upper");
    }
    if (!(relative_tolerance > 0.0)) throw DomainError("scale tolerance must be positive");

    const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
    const double lo0 = std::log(interval.lower);
    const double hi0 = std::log(interval.upper);
    double lo = lo0;
    double hi = hi0;
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = f(std::exp(c));
    double fd = f(std::exp(d));
    int evaluations = 2;

    while (hi - lo > relative_tolerance) {
        if (fc <= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = f(std::exp(c));
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = f(std::exp(d));
        }
        ++evaluations;
    }

    ScaleMinimum best;
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(std::exp(mid));
    ++evaluations;
    best.scale = std::exp(mid);
    best.value = fmid;
    if (fc < best.value) best = {std::exp(c), fc};
    if (fd < best.value) best = {std::exp(d), fd};
    const double t = std::log(best.scale);
    best.at_endpoint = (t - lo0 < 2.0 * relative_tolerance) || (hi0 - t < 2.0 * relative_tolerance);
    best.evaluations = evaluations;
    return best;
}

}  // namespace salbound
