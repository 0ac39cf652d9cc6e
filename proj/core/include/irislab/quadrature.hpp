#pragma once

#include <functional>
#include <vector>

namespace irislab {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
    bool converged = true;
};

using Integrand = std::function<double(double)>;

struct QuadOptions {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    int max_intervals = 4000;
};

// Globally adaptive Gauss-Kronrod (7/15): the interval with the largest
// error estimate is bisected until the summed estimate falls below
// max(abs_tol, rel_tol * |I|).
QuadResult integrate(const Integrand& f, double a, double b, QuadOptions opt = {});

// Same, starting from the partition [x0,x1], [x1,x2], ...
QuadResult integrate_pieces(const Integrand& f, const std::vector<double>& breaks,
                            QuadOptions opt = {});

// Double-exponential change of variable first, for integrable endpoint
// singularities.
QuadResult integrate_endpoint_singular(const Integrand& f, double a, double b,
                                       QuadOptions opt = {});

}  // namespace irislab
