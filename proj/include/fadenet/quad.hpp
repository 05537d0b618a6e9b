#pragma once
// Quadrature building blocks: Gauss-Legendre / Gauss-Laguerre rules with
// node tables computed once at first use, plus a stack-based adaptive
// integrator that works for real- and complex-valued integrands.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace fadenet::quad {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Rule {
    std::vector<double> x;  // nodes
    std::vector<double> w;  // weights
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
inline Rule make_gauss_legendre(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.x[i] = -z;
        r.x[n - 1 - i] = z;
        r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
}

// Gauss-Laguerre nodes/weights for \int_0^inf e^{-x} f(x) dx.
// Newton on L_n with x L_n'(x) = n (L_n - L_{n-1}); weight x/((n+1)^2 L_{n+1}^2).
inline Rule make_gauss_laguerre(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * n);
        else if (i == 1)
            z += 15.0 / (1.0 + 2.5 * n);
        else
            z += ((1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1))) * (z - r.x[i - 2]);
        double Ln = 0.0, Lnm1 = 0.0;
        for (int it = 0; it < 200; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0 - z) * p1 - j * p2) / (j + 1.0);
            }
            Ln = p0;
            Lnm1 = p1;
            double pp = n * (Ln - Lnm1) / z;
            double dz = Ln / pp;
            z -= dz;
            if (std::abs(dz) < 1e-14 * (1.0 + z)) break;
        }
        double Lnp1 = ((2.0 * n + 1.0 - z) * Ln - n * Lnm1) / (n + 1.0);
        r.x[i] = z;
        r.w[i] = z / ((n + 1.0) * (n + 1.0) * Lnp1 * Lnp1);
    }
    return r;
}

const Rule& gauss_legendre(int n);
const Rule& gauss_laguerre(int n);

// Fixed-order Gauss-Legendre on [a,b].
template <class F>
auto gl_panel(F&& f, double a, double b, const Rule& r) {
    using T = decltype(f(a));
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T s{};
    for (std::size_t i = 0; i < r.x.size(); ++i) s += T(r.w[i]) * f(c + h * r.x[i]);
    return T(h) * s;
}

// Adaptive bisection with a GL-12 rule; error per panel estimated by
// comparing against the two-half refinement.
template <class F>
auto adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
              double* err_out = nullptr, int max_panels = 4000) {
    using T = decltype(f(a));
    const Rule& r = gauss_legendre(12);
    struct Seg {
        double a, b;
        T val;
    };
    std::vector<Seg> stack;
    stack.push_back({a, b, gl_panel(f, a, b, r)});
    T total{};
    double err = 0.0;
    int used = 0;
    // first pass estimate of magnitude for the relative criterion
    double scale = std::abs(stack[0].val);
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const double m = 0.5 * (s.a + s.b);
        T left = gl_panel(f, s.a, m, r);
        T right = gl_panel(f, m, s.b, r);
        double e = std::abs((left + right) - s.val);
        double tol = std::max(abs_tol, rel_tol * scale) * (s.b - s.a) / (b - a);
        if (e < tol || ++used > max_panels || (s.b - s.a) < 1e-14 * (b - a)) {
            if (used > max_panels && e > 64 * tol)
                throw QuadratureError("adaptive quadrature: panel budget exhausted");
            total += left + right;
            err += e;
            scale = std::max(scale, std::abs(total));
        } else {
            stack.push_back({s.a, m, left});
            stack.push_back({m, s.b, right});
        }
    }
    if (err_out) *err_out = err;
    return total;
}

// \int_0^inf f(xi) dxi on a log axis: xi = e^u, panels of unit width walked
// outward from u0 until two consecutive panels on each side fall below the
// tail tolerance.  Decaying integrands only.
template <class F>
auto integrate_log_axis(F&& f, double u0, double abs_tol, double rel_tol,
                        double* err_out = nullptr, int max_panels_side = 120) {
    auto g = [&](double u) { return f(std::exp(u)) * std::exp(u); };
    using T = decltype(g(u0));
    T total{};
    double err = 0.0;
    double scale = 0.0;
    auto do_panel = [&](double ua, double ub) {
        double e = 0.0;
        T v = adaptive(g, ua, ub, abs_tol * 0.1, rel_tol * 0.1, &e);
        total += v;
        err += e;
        scale = std::max(scale, std::abs(total));
        return std::abs(v);
    };
    do_panel(u0, u0 + 1.0);
    int small_run = 0;
    double last = 0.0;
    for (int k = 1; k <= max_panels_side; ++k) {  // right tail
        double m = do_panel(u0 + k, u0 + k + 1.0);
        double tol = std::max(abs_tol, rel_tol * scale);
        small_run = (m < tol) ? small_run + 1 : 0;
        if (small_run >= 2) {
            // algebraic-tail extrapolation: |sum of remaining panels| <~ m/(1-q)
            if (last > 0.0 && m > 0.0 && m < last) err += m / (1.0 - m / last);
            break;
        }
        last = m;
    }
    small_run = 0;
    for (int k = 0; k < max_panels_side; ++k) {  // left tail (xi -> 0)
        double m = do_panel(u0 - k - 1.0, u0 - k);
        double tol = std::max(abs_tol, rel_tol * scale);
        small_run = (m < tol) ? small_run + 1 : 0;
        if (small_run >= 2) {
            err += m;  // integrand ~ xi * h(xi) decays at least geometrically in u
            break;
        }
    }
    if (err_out) *err_out = err;
    return total;
}

// Euler/van-Wijngaarden acceleration of an alternating-tending sequence of
// partial sums; returns the accelerated limit and a difference-based error.
template <class T>
T euler_accelerate(const std::vector<T>& partial, double* err_out) {
    std::vector<T> row = partial;
    T best = row.back();
    double best_err = (row.size() > 1) ? std::abs(row[row.size() - 1] - row[row.size() - 2])
                                       : std::abs(row.back());
    while (row.size() > 1) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = T(0.5) * (row[i] + row[i + 1]);
        row.pop_back();
        if (row.size() > 1) {
            double e = std::abs(row[row.size() - 1] - row[row.size() - 2]);
            if (e < best_err) {
                best_err = e;
                best = row.back();
            }
        }
    }
    if (err_out) *err_out = best_err;
    return best;
}

}  // namespace fadenet::quad
