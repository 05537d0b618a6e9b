#pragma once
// Hypergeometric / Bessel / Gaussian-tail kernel.
//
// Two-variable functions follow the standard slot convention
//   Psi1(a,b;c,c';x,y)   = sum (a)_{j+n} (b)_j x^j y^n / ((c)_j (c')_n j! n!)
//   Psi2(a;c,c';x,y)     = sum (a)_{j+n}       x^j y^n / ((c)_j (c')_n j! n!)
//   F1(a,b,b';c;x,y)     = sum (a)_{j+n} (b)_j (b')_n x^j y^n / ((c)_{j+n} j! n!)
//   F2(a,b,b';c,c';x,y)  = sum (a)_{j+n} (b)_j (b')_n x^j y^n / ((c)_j (c')_n j! n!)
// i.e. x always pairs with (b, c) and y with (b', c').  Evaluation routes
// (series in x, series in y, integral representation, asymptotics) are chosen
// internally from the argument geometry.

#include <complex>
#include <stdexcept>

namespace fadenet::special {

using cplx = std::complex<double>;

struct SeriesControl {
    int max_terms = 10000;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvalResult {
    cplx value{};
    double error_estimate = 0.0;
    int terms_used = 0;
    double real() const { return value.real(); }
};

// ---- elementary helpers ----------------------------------------------------
double binom(int n, int k);              // exact binomial coefficient
double lpoch(double a, int n);           // log (a)_n, a > 0
double gaussian_q(double x);             // upper-tail standard normal

// ---- Bessel ----------------------------------------------------------------
EvalResult bessel_j1(double z);                 // z >= 0
EvalResult bessel_i(double nu, double z);       // z >= 0
double bessel_i_scaled_log(double nu, double z);  // log( e^{-z} I_nu(z) ), z > 0

// ---- one-variable hypergeometric --------------------------------------------
EvalResult gauss_2f1(double a, double b, double c, cplx z,
                     const SeriesControl& ctl = {});
EvalResult kummer_1f1(double a, double c, cplx z, const SeriesControl& ctl = {});
// log 1F1(a;c;z) for a,c > 0, z >= 0 (all-positive series, overflow-safe)
double log_kummer_pos(double a, double c, double z);
EvalResult tricomi_u(double a, double b, double z);

// 1F1(a0+j; c; z) for j = 0..count-1 via the three-term recurrence in the
// first parameter (forward direction is dominant-solution stable).
void kummer_ladder(double a0, double c, cplx z, int count, cplx* out,
                   const SeriesControl& ctl = {});

// ---- two-variable hypergeometric --------------------------------------------
EvalResult humbert_psi1(double a, double b, double c, double cp, cplx x, cplx y,
                        const SeriesControl& ctl = {});
EvalResult humbert_psi2(double a, double c, double cp, cplx x, cplx y,
                        const SeriesControl& ctl = {});
EvalResult appell_f1(double a, double b, double bp, double c, double x, double y,
                     const SeriesControl& ctl = {});
EvalResult appell_f2(double a, double b, double bp, double c, double cp,
                     double x, double y, const SeriesControl& ctl = {});

}  // namespace fadenet::special
