#include "irislab/specfun.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "irislab/errors.hpp"
#include "irislab/quadrature.hpp"

namespace irislab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesTol = 1e-12;
constexpr std::int64_t kMaxTerms = 1'000'000;
constexpr double kCancellationGuard = 1e6;

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && std::floor(x) == x;
}

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// max(1, (|p|+j)/(q+j)) bounds |(p+j)/(q+j)| and is nonincreasing in j
// once q + j > 0.
double ratio_factor_bound(double p, double q, double j) {
    if (q + j <= 0.0) return std::numeric_limits<double>::infinity();
    return std::max(1.0, (std::abs(p) + j) / (q + j));
}

struct SeriesSum {
    double value = 0.0;
    double tail = 0.0;
    double abs_sum = 0.0;
    double max_partial = 0.0;
    std::int64_t terms = 0;
};

// Sums 1 + sum_{n>=1} t_n where t_{n+1} = t_n * ratio(n) and bound(n)
// majorizes |ratio(j)| for every j >= n.
template <class Ratio, class Bound>
SeriesSum sum_hypergeometric(Ratio ratio, Bound bound, const char* name) {
    CompensatedSum acc;
    acc.add(1.0);
    SeriesSum out;
    out.abs_sum = 1.0;
    out.max_partial = 1.0;
    double term = 1.0;
    for (std::int64_t n = 0; n < kMaxTerms; ++n) {
        const double r = ratio(static_cast<double>(n));
        term *= r;
        out.terms = n + 2;
        if (term == 0.0) {
            out.tail = 0.0;
            out.value = acc.value();
            return out;
        }
        acc.add(term);
        out.abs_sum += std::abs(term);
        const double partial = acc.value();
        out.max_partial = std::max(out.max_partial, std::abs(partial));
        const double rho = bound(static_cast<double>(n + 1));
        if (rho < 1.0) {
            const double tail = std::abs(term) * rho / (1.0 - rho);
            if (tail <= kSeriesTol * std::abs(partial) || tail == 0.0) {
                out.tail = tail;
                out.value = partial;
                return out;
            }
        }
        if (!std::isfinite(partial))
            fail(ErrorKind::overflow, std::string(name) + ": series overflowed");
    }
    fail(ErrorKind::no_convergence,
         std::string(name) + ": no convergence within 1e6 terms");
}

EvalResult finish_series(const SeriesSum& s) {
    EvalResult r;
    r.value = s.value;
    r.abs_error_bound =
        s.tail + static_cast<double>(s.terms) * kEps * s.abs_sum;
    r.terms_used = s.terms;
    r.method = EvalMethod::series;
    return r;
}

bool cancellation_tripped(const SeriesSum& s) {
    return s.max_partial > kCancellationGuard * std::abs(s.value);
}

// 2F2(a, c; a+1, c+1; -x), x > 0, through
// ac/(c-a) [x^-a gamma(a,x) - x^-c gamma(c,x)].
EvalResult hyp2f2_host_identity(double a, double c, double x) {
    const double lx = std::log(x);
    const double la = -a * lx + std::lgamma(a) +
                      std::log(boost::math::gamma_p(a, x));
    const double lc = -c * lx + std::lgamma(c) +
                      std::log(boost::math::gamma_p(c, x));
    const double m = std::max(la, lc);
    const double pref = a * c / (c - a);
    const double ea = std::exp(la - m);
    const double ec = std::exp(lc - m);
    EvalResult r;
    r.value = pref * (ea - ec);
    r.abs_error_bound = 64.0 * kEps * std::abs(pref) * (ea + ec);
    r.terms_used = 0;
    r.method = EvalMethod::host_identity;
    r.log_scale = m;
    return r;
}

// log of 1F1(p; q; y) for y >= 0 with p, q > 0 (all terms positive).
double log_hyp1f1_positive(double p, double q, double y) {
    const auto s = sum_hypergeometric(
        [&](double n) { return (p + n) * y / ((q + n) * (n + 1.0)); },
        [&](double n) { return y * ratio_factor_bound(p, q, n) / (n + 1.0); },
        "hyp1f1");
    return std::log(s.value);
}

// Euler integral
// 2F2 = G(b1)/(G(a1)G(b1-a1)) int_0^1 t^{a1-1}(1-t)^{b1-a1-1} 1F1(a2;b2;zt) dt
// with the inner 1F1 Kummer-transformed for z < 0.
EvalResult hyp2f2_euler(double a1, double a2, double b1, double b2, double z) {
    if (!(b1 > a1 && a1 > 0.0)) {
        std::swap(a1, a2);
        std::swap(b1, b2);
    }
    if (!(b1 > a1 && a1 > 0.0) || !(b2 > a2 && a2 > 0.0))
        fail(ErrorKind::parameter_pattern,
             "hyp2f2: large-argument evaluation needs b_i > a_i > 0");
    const double log_norm =
        std::lgamma(b1) - std::lgamma(a1) - std::lgamma(b1 - a1);
    auto f = [&](double t) {
        if (t <= 0.0 || t >= 1.0) return 0.0;
        const double y = -z * t;
        const double inner = z * t + log_hyp1f1_positive(b2 - a2, b2, y);
        return std::exp(log_norm + (a1 - 1.0) * std::log(t) +
                        (b1 - a1 - 1.0) * std::log1p(-t) + inner);
    };
    const auto q = integrate_endpoint_singular(f, 0.0, 1.0, {1e-13});
    EvalResult r;
    r.value = q.value;
    r.abs_error_bound = q.abs_error;
    r.terms_used = 0;
    r.method = EvalMethod::euler_integral;
    return r;
}

bool is_host_pattern(double a1, double a2, double b1, double b2) {
    return std::abs(b1 - a1 - 1.0) < 1e-14 && std::abs(b2 - a2 - 1.0) < 1e-14 &&
           a1 > 0.0 && a2 > 0.0 && std::abs(a1 - a2) > 1e-8;
}

// Plain series in 100 significant digits, enough to absorb the
// cancellation of an alternating series up to |z| of about 150.
EvalResult hyp2f2_extended(double a1, double a2, double b1, double b2, double z) {
    using big = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<100>>;
    if (std::abs(z) > 150.0)
        fail(ErrorKind::parameter_pattern,
             "hyp2f2: no stable evaluation for these parameters at this argument");
    const big A1(a1), A2(a2), B1(b1), B2(b2), Z(z);
    big sum = 1, term = 1;
    std::int64_t n = 0;
    for (; n < kMaxTerms; ++n) {
        term *= (A1 + n) * (A2 + n) * Z / ((B1 + n) * (B2 + n) * (n + 1));
        sum += term;
        if (n > std::abs(z) && abs(term) < big("1e-40") * abs(sum)) break;
    }
    if (n == kMaxTerms)
        fail(ErrorKind::no_convergence, "hyp2f2: no convergence within 1e6 terms");
    EvalResult r;
    r.value = sum.convert_to<double>();
    r.abs_error_bound = 4.0 * kEps * std::abs(r.value);
    r.terms_used = n + 2;
    r.method = EvalMethod::series;
    return r;
}

EvalResult hyp2f2_large_negative(double a1, double a2, double b1, double b2,
                                 double z) {
    if (is_host_pattern(a1, a2, b1, b2) || is_host_pattern(a1, a2, b2, b1))
        return hyp2f2_host_identity(a1, a2, -z);
    if (b1 > a1 && a1 > 0.0 && b2 > a2 && a2 > 0.0) return hyp2f2_euler(a1, a2, b1, b2, z);
    return hyp2f2_extended(a1, a2, b1, b2, z);
}

}  // namespace

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::pole: return "pole";
        case ErrorKind::no_convergence: return "no_convergence";
        case ErrorKind::parameter_pattern: return "parameter_pattern";
        case ErrorKind::conditioning: return "conditioning";
        case ErrorKind::rank_deficient: return "rank_deficient";
        case ErrorKind::dimension: return "dimension";
        case ErrorKind::insufficient_points: return "insufficient_points";
        case ErrorKind::division_by_zero: return "division_by_zero";
        case ErrorKind::overflow: return "overflow";
        case ErrorKind::config: return "config";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

const char* to_string(EvalMethod m) {
    switch (m) {
        case EvalMethod::series: return "series";
        case EvalMethod::host_identity: return "host_identity";
        case EvalMethod::euler_integral: return "euler_integral";
        case EvalMethod::slater: return "slater";
        case EvalMethod::contour: return "contour";
        case EvalMethod::host_integral: return "host_integral";
    }
    return "unknown";
}

double EvalResult::scaled() const {
    return log_scale == 0.0 ? value : value * std::exp(log_scale);
}

double log_gamma(double x) {
    if (!(x > 0.0)) fail(ErrorKind::domain, "log_gamma: argument must be > 0");
    return std::lgamma(x);
}

double digamma(double x) {
    if (is_nonpositive_integer(x)) fail(ErrorKind::pole, "digamma: pole");
    return boost::math::digamma(x);
}

double reg_lower_gamma(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0))
        fail(ErrorKind::domain, "reg_lower_gamma: need a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    return boost::math::gamma_p(a, x);
}

double reg_upper_gamma(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0))
        fail(ErrorKind::domain, "reg_upper_gamma: need a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    return boost::math::gamma_q(a, x);
}

double pochhammer_direct(double x, unsigned n) {
    double p = 1.0;
    for (unsigned k = 0; k < n; ++k) {
        if (x + k == 0.0) fail(ErrorKind::pole, "pochhammer: pole crossing");
        p *= x + k;
    }
    return p;
}

double pochhammer_log(double x, unsigned n) {
    if (n == 0) return 1.0;
    if (is_nonpositive_integer(x) && x + n > 0.0)
        fail(ErrorKind::pole, "pochhammer: pole crossing");
    // Gamma(x+n)/Gamma(x), signs tracked separately
    const double end = x + n;
    if (is_nonpositive_integer(end)) {
        // both endpoints are poles: fall back to the product
        return pochhammer_direct(x, n);
    }
    const double s1 = boost::math::sign(boost::math::tgamma(end));
    const double s0 = boost::math::sign(boost::math::tgamma(x));
    return s1 * s0 * std::exp(std::lgamma(end) - std::lgamma(x));
}

double pochhammer(double x, unsigned n) {
    if (is_nonpositive_integer(x) && x + n > 0.0)
        fail(ErrorKind::pole, "pochhammer: pole crossing");
    return n <= 64 ? pochhammer_direct(x, n) : pochhammer_log(x, n);
}

EvalResult hyp2f2(double a1, double a2, double b1, double b2, double z) {
    if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2))
        fail(ErrorKind::pole, "hyp2f2: lower parameter is a nonpositive integer");
    if (z == 0.0) return {1.0, 0.0, 1, EvalMethod::series, 0.0};
    // an upper parameter equal to a lower one cancels
    if (a1 == b1) return hyp1f1(a2, b2, z);
    if (a2 == b2) return hyp1f1(a1, b1, z);
    if (a1 == b2) return hyp1f1(a2, b1, z);
    if (a2 == b1) return hyp1f1(a1, b2, z);
    if (z < -50.0) return hyp2f2_large_negative(a1, a2, b1, b2, z);
    const double az = std::abs(z);
    const auto s = sum_hypergeometric(
        [&](double n) {
            return (a1 + n) * (a2 + n) * z / ((b1 + n) * (b2 + n) * (n + 1.0));
        },
        [&](double n) {
            return az * ratio_factor_bound(a1, b1, n) *
                   ratio_factor_bound(a2, b2, n) / (n + 1.0);
        },
        "hyp2f2");
    if (z < 0.0 && cancellation_tripped(s))
        return hyp2f2_large_negative(a1, a2, b1, b2, z);
    return finish_series(s);
}

EvalResult hyp1f1(double a, double b, double z) {
    if (is_nonpositive_integer(b))
        fail(ErrorKind::pole, "hyp1f1: lower parameter is a nonpositive integer");
    if (z == 0.0) return {1.0, 0.0, 1, EvalMethod::series, 0.0};
    if (z < 0.0) {
        // Kummer: 1F1(a; b; z) = e^z 1F1(b-a; b; -z)
        auto r = hyp1f1(b - a, b, -z);
        const double e = std::exp(z);
        r.value *= e;
        r.abs_error_bound = r.abs_error_bound * e + 4.0 * kEps * std::abs(r.value);
        return r;
    }
    const double az = std::abs(z);
    const auto s = sum_hypergeometric(
        [&](double n) { return (a + n) * z / ((b + n) * (n + 1.0)); },
        [&](double n) { return az * ratio_factor_bound(a, b, n) / (n + 1.0); },
        "hyp1f1");
    return finish_series(s);
}

EvalResult hyp2f1(double a, double b, double c, double z) {
    if (is_nonpositive_integer(c))
        fail(ErrorKind::pole, "hyp2f1: lower parameter is a nonpositive integer");
    if (!(std::abs(z) < 1.0)) fail(ErrorKind::domain, "hyp2f1: need |z| < 1");
    if (z == 0.0) return {1.0, 0.0, 1, EvalMethod::series, 0.0};
    if (z < -0.5) {
        // Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)) keeps the argument in (1/3, 1/2)
        auto r = hyp2f1(a, c - b, c, z / (z - 1.0));
        const double f = std::pow(1.0 - z, -a);
        r.value *= f;
        r.abs_error_bound *= f;
        return r;
    }
    const double az = std::abs(z);
    const auto s = sum_hypergeometric(
        [&](double n) { return (a + n) * (b + n) * z / ((c + n) * (n + 1.0)); },
        [&](double n) {
            return az * ratio_factor_bound(a, c, n) * ratio_factor_bound(b, 1.0, n);
        },
        "hyp2f1");
    return finish_series(s);
}

double bessel_i(double nu, double x) {
    if (!(x >= 0.0)) fail(ErrorKind::domain, "bessel_i: need x >= 0");
    if (x > 700.0) fail(ErrorKind::overflow, "bessel_i: argument beyond series range");
    const bool neg_int = nu < 0.0 && std::floor(nu) == nu;
    if (neg_int) nu = -nu;  // I_{-n} = I_n
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        fail(ErrorKind::overflow, "bessel_i: negative order at x = 0");
    }
    const double h = 0.5 * x;
    const double h2 = h * h;
    // first term (x/2)^nu / Gamma(nu+1), sign from Gamma for negative nu
    const double g = boost::math::tgamma(nu + 1.0);
    double term = std::exp(nu * std::log(h)) / g;
    CompensatedSum acc;
    acc.add(term);
    for (int k = 0; k < 100000; ++k) {
        term *= h2 / ((k + 1.0) * (k + 1.0 + nu));
        acc.add(term);
        if (k + 1.0 + nu > 0.0 && std::abs(term) < 1e-17 * std::abs(acc.value()) &&
            h2 / ((k + 2.0) * (k + 2.0 + nu)) < 0.5)
            break;
    }
    return acc.value();
}

double bessel_k(double nu, double x) {
    if (!(x > 0.0)) fail(ErrorKind::domain, "bessel_k: need x > 0");
    return std::cyl_bessel_k(std::abs(nu), x);
}

}  // namespace irislab
