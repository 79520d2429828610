#include "nmsse/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace nmsse {

namespace {

// 15-point Kronrod nodes on [-1, 1] (positive half) with the embedded
// 7-point Gauss weights on the odd-indexed nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kNodes[i];
        const double fsum = (i == 7) ? f(mid) : f(mid - dx) + f(mid + dx);
        kron += kKronrodW[i] * fsum;
        if (i % 2 == 1) gauss += kGaussW[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return Panel{a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
    if (!(b > a)) return 0.0;
    std::priority_queue<Panel> panels;
    const int n0 = std::max(1, opts.initial_intervals);
    double total = 0.0;
    double total_err = 0.0;
    for (int i = 0; i < n0; ++i) {
        const double pa = a + (b - a) * i / n0;
        const double pb = a + (b - a) * (i + 1) / n0;
        Panel p = evaluate_panel(f, pa, pb);
        total += p.value;
        total_err += p.error;
        panels.push(p);
    }
    int n = n0;
    while (total_err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total))) {
        if (n >= opts.max_intervals) {
            throw QuadratureError("quadrature did not converge: estimated error " +
                                      std::to_string(total_err),
                                  total, total_err);
        }
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = evaluate_panel(f, worst.a, mid);
        Panel right = evaluate_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++n;
    }
    return total;
}

}  // namespace nmsse
