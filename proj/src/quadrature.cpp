#include "grss/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace grss {

namespace {

// Kronrod 15-point nodes and weights with the embedded Gauss 7 rule, on [-1,1].
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, integral, error;
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    for (int k = 0; k < 7; ++k) {
        fv[k] = f(c - h * kXgk[k]);
        fv[14 - k] = f(c + h * kXgk[k]);
    }
    fv[7] = f(c);
    double gk = 0.0, g = 0.0;
    for (int k = 0; k < 7; ++k) gk += kWgk[k] * (fv[k] + fv[14 - k]);
    gk += kWgk[7] * fv[7];
    for (int k = 0; k < 3; ++k) g += kWg[k] * (fv[2 * k + 1] + fv[13 - 2 * k]);
    g += kWg[3] * fv[7];
    const double diff = std::fabs(gk - g) * h;
    return {a, b, gk * h, std::pow(200.0 * diff, 1.5) < diff ? std::pow(200.0 * diff, 1.5) : diff};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol) {
    auto worse = [](const Panel& p, const Panel& q) { return p.error < q.error; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> heap(worse);
    heap.push(eval_panel(f, a, b));
    double total = heap.top().integral, err = heap.top().error;
    const int max_panels = 4000;
    int panels = 1;
    while (err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (panels >= max_panels || heap.top().b - heap.top().a < 1e-14 * (b - a))
            throw QuadratureError("integrate_adaptive: subdivision budget exhausted", err);
        const Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        const Panel l = eval_panel(f, p.a, mid), r = eval_panel(f, mid, p.b);
        total += l.integral + r.integral - p.integral;
        err += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
        ++panels;
    }
    if (!std::isfinite(total))
        throw QuadratureError("integrate_adaptive: non-finite integral", err);
    return total;
}

}  // namespace grss
