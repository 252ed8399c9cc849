#pragma once

#include <functional>
#include <stdexcept>

namespace grss {

class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

/// Adaptive Gauss-Kronrod (7/15) on (a,b); never evaluates the endpoints.
/// Throws QuadratureError when the error estimate cannot be brought under
/// max(abs_tol, rel_tol*|I|) within the subdivision budget.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10, double rel_tol = 1e-10);

}  // namespace grss
