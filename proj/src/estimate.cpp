#include "percolab/estimate.hpp"

#include <stdexcept>

namespace percolab {

PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y,
                          const std::vector<double>& y_se) {
    if (x.size() != y.size() || x.size() != y_se.size())
        throw std::invalid_argument("fit_power_law: size mismatch");
    PowerLawFit fit;
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        const double var_ly =
            y_se[i] > 0.0 ? (y_se[i] / y[i]) * (y_se[i] / y[i]) : 1e-12;
        const double w = 1.0 / var_ly;
        sw += w;
        swx += w * lx;
        swy += w * ly;
        swxx += w * lx * lx;
        swxy += w * lx * ly;
        ++fit.used;
    }
    if (fit.used < 2) throw std::runtime_error("fit_power_law: underpowered");
    const double det = sw * swxx - swx * swx;
    fit.slope = (sw * swxy - swx * swy) / det;
    fit.intercept = (swxx * swy - swx * swxy) / det;
    fit.slope_se = std::sqrt(sw / det);
    return fit;
}

} // namespace percolab
