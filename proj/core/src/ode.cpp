#include <cmath>
#include <stdexcept>

#include "graphrw/stochastic.hpp"

namespace graphrw {

Trajectory integrate(const ODESystem& sys, const std::vector<double>& init, double t_end,
                     double dt) {
    const size_t n = sys.variables.size();
    if (init.size() != n) throw std::invalid_argument("integrate: init size mismatch");
    if (dt <= 0 || t_end < 0) throw std::invalid_argument("integrate: bad time parameters");

    auto rhs = [&](const std::vector<double>& y, std::vector<double>& dy) {
        for (size_t i = 0; i < n; ++i) {
            double acc = sys.equations[i].constant.to_double();
            for (const auto& [j, c] : sys.equations[i].coeffs) acc += c.to_double() * y[j];
            dy[i] = acc;
        }
    };

    Trajectory tr;
    for (const auto& v : sys.variables) tr.names.push_back(v.name);
    std::vector<double> y = init, k1(n), k2(n), k3(n), k4(n), tmp(n);
    double t = 0;
    tr.t.push_back(t);
    tr.values.push_back(y);
    while (t < t_end - 1e-15) {
        double h = std::min(dt, t_end - t);
        rhs(y, k1);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(tmp, k2);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(tmp, k3);
        for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(tmp, k4);
        for (size_t i = 0; i < n; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            if (!std::isfinite(y[i])) throw std::runtime_error("integrate: non-finite value");
        }
        t += h;
        tr.t.push_back(t);
        tr.values.push_back(y);
    }
    return tr;
}

}  // namespace graphrw
