#include "ghcov/quadrature.hpp"
#include "ghcov/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace ghcov {

namespace {

// Gauss-Legendre nodes/weights computed once by Newton iteration on P_n.
struct GaussRule {
    std::array<double, 15> x{};
    std::array<double, 15> w{};
    GaussRule() {
        const int n = 15;
        for (int i = 0; i < n; ++i) {
            // Initial guess (Abramowitz-Stegun 22.16.6 style).
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                // Evaluate P_n(t) and P_n'(t) by recurrence.
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GaussRule& rule() {
    static const GaussRule r;
    return r;
}

double panel(const std::function<double(double)>& f, double a, double b) {
    const GaussRule& r = rule();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 15; ++i) s += r.w[i] * f(c + h * r.x[i]);
    return s * h;
}

struct Segment {
    double a, b, value, err;
    bool operator<(const Segment& o) const { return err < o.err; }
};

double adaptive(const std::function<double(double)>& f, double a, double b,
                double abs_tol, double rel_tol, int max_subdivisions,
                double* err_out, bool throw_on_failure) {
    if (a == b) {
        if (err_out) *err_out = 0.0;
        return 0.0;
    }
    std::priority_queue<Segment> q;
    auto eval = [&](double lo, double hi) {
        double whole = panel(f, lo, hi);
        double mid = 0.5 * (lo + hi);
        double halves = panel(f, lo, mid) + panel(f, mid, hi);
        return Segment{lo, hi, halves, std::abs(whole - halves)};
    };
    Segment s0 = eval(a, b);
    double total = s0.value, total_err = s0.err;
    q.push(s0);
    int used = 1;
    while (used < max_subdivisions) {
        double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= tol) break;
        Segment s = q.top();
        q.pop();
        double mid = 0.5 * (s.a + s.b);
        Segment l = eval(s.a, mid), r = eval(mid, s.b);
        total += l.value + r.value - s.value;
        total_err += l.err + r.err - s.err;
        q.push(l);
        q.push(r);
        ++used;
    }
    if (err_out) *err_out = total_err;
    double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (throw_on_failure && !(total_err <= tol) && !(total_err <= 1e-10 * std::abs(total)))
        throw numeric_error("quadrature failed to converge: err=" + std::to_string(total_err) +
                            " over [" + std::to_string(a) + "," + std::to_string(b) + "]");
    return total;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_subdivisions) {
    return adaptive(f, a, b, abs_tol, rel_tol, max_subdivisions, nullptr, true);
}

double integrate_nothrow(const std::function<double(double)>& f, double a, double b,
                         double abs_tol, double rel_tol, int max_subdivisions,
                         double* err_out) {
    return adaptive(f, a, b, abs_tol, rel_tol, max_subdivisions, err_out, false);
}

double gauss15(const std::function<double(double)>& f, double a, double b) {
    return panel(f, a, b);
}

double integrate_beta_weighted(const std::function<double(double)>& f,
                               double p, double q,
                               double abs_tol, double rel_tol, int max_subdivisions) {
    if (!(p > 0.0) || !(q > 0.0))
        throw validation_error("integrate_beta_weighted: exponents must be positive");
    // Left half [0, 1/2]: t = (1/2) w^(1/p) flattens t^(p-1) exactly.
    auto left = [&](double w) {
        double t = 0.5 * std::pow(w, 1.0 / p);
        return std::pow(1.0 - t, q - 1.0) * f(t);
    };
    // Right half mirrored.
    auto right = [&](double w) {
        double omt = 0.5 * std::pow(w, 1.0 / q);
        double t = 1.0 - omt;
        return std::pow(t, p - 1.0) * f(t);
    };
    double scale_l = 1.0 / (p * std::pow(2.0, p));
    double scale_r = 1.0 / (q * std::pow(2.0, q));
    double half = max_subdivisions / 2 > 1 ? max_subdivisions / 2 : 1;
    double vl = adaptive(left, 0.0, 1.0, abs_tol / std::max(scale_l, 1e-300), rel_tol,
                         static_cast<int>(half), nullptr, true);
    double vr = adaptive(right, 0.0, 1.0, abs_tol / std::max(scale_r, 1e-300), rel_tol,
                         static_cast<int>(half), nullptr, true);
    return scale_l * vl + scale_r * vr;
}

} // namespace ghcov
