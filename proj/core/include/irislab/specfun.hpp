#pragma once

#include <complex>
#include <cstdint>

namespace irislab {

enum class EvalMethod {
    series,          // power series, compensated summation
    host_identity,   // 2F2(a,c;a+1,c+1;-z) via incomplete gammas
    euler_integral,  // 2F2 via quadrature of the Euler integral
    slater,          // Meijer-G residue sums
    contour,         // Meijer-G Mellin-Barnes line integral
    host_integral,   // Meijer-G as the real integral it came from
};

const char* to_string(EvalMethod m);

// The represented number is value * exp(log_scale). Most paths leave
// log_scale at 0; the large-argument 2F2 path uses it to stay finite.
// abs_error_bound is in the same (scaled) units as value.
struct EvalResult {
    double value = 0.0;
    double abs_error_bound = 0.0;
    std::int64_t terms_used = 0;
    EvalMethod method = EvalMethod::series;
    double log_scale = 0.0;

    double scaled() const;
};

double log_gamma(double x);
double digamma(double x);

// P(a,x) = gamma(a,x)/Gamma(a) and its complement.
double reg_lower_gamma(double a, double x);
double reg_upper_gamma(double a, double x);

// (x)_n. The direct and log-domain paths are exposed for cross-checking.
double pochhammer(double x, unsigned n);
double pochhammer_direct(double x, unsigned n);
double pochhammer_log(double x, unsigned n);

EvalResult hyp2f2(double a1, double a2, double b1, double b2, double z);
EvalResult hyp1f1(double a, double b, double z);
EvalResult hyp2f1(double a, double b, double c, double z);

double bessel_i(double nu, double x);
double bessel_k(double nu, double x);

std::complex<double> log_gamma(std::complex<double> z);

enum class MeijerPath {
    automatic,
    slater,
    contour,
    host_integral,
    checked,  // slater and contour both, conditioning error on disagreement
};

// G^{3,1}_{2,3}(z | a1, a2 ; b_top, b2, b3) for the two parameter shapes
// that occur in the ergodic-rate expression:
//   (a1,a2) = (0,1),  (b) = (0,0,a)
//   (a1,a2) = (d,1),  (b) = (d,0,a+d),  0 < d < 1
EvalResult meijer_g_3123(double b_top, double b2, double b3, double a1,
                         double a2, double z,
                         MeijerPath path = MeijerPath::automatic);

}  // namespace irislab
