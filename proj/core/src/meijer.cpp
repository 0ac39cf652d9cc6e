#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "irislab/errors.hpp"
#include "irislab/quadrature.hpp"
#include "irislab/specfun.hpp"

namespace irislab {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

struct Pattern {
    bool shifted = false;  // false: (0,1;0,0,a)   true: (d,1;d,0,a+d)
    double a = 0.0;
    double d = 0.0;
};

Pattern classify(double b_top, double b2, double b3, double a1, double a2) {
    constexpr double tol = 1e-14;
    if (std::abs(a2 - 1.0) > tol || std::abs(b2) > tol)
        fail(ErrorKind::parameter_pattern, "meijer_g_3123: unsupported parameters");
    if (std::abs(a1) <= tol && std::abs(b_top) <= tol) {
        if (!(b3 > 0.0))
            fail(ErrorKind::parameter_pattern, "meijer_g_3123: need a > 0");
        return {false, b3, 0.0};
    }
    if (std::abs(a1 - b_top) <= tol && a1 > 0.0 && a1 < 1.0) {
        const double a = b3 - a1;
        if (!(a > 0.0))
            fail(ErrorKind::parameter_pattern, "meijer_g_3123: need a > 0");
        return {true, a, a1};
    }
    fail(ErrorKind::parameter_pattern, "meijer_g_3123: unsupported parameters");
}

bool near_integer(double x) {
    return std::abs(x - std::round(x)) < 1e-6;
}

// Residue sums. `guard` is set when a partial sum exceeds 1e6 * |result|.
EvalResult slater(const Pattern& p, double z, bool& guard) {
    const double a = p.a;
    const double d = p.d;
    if (a > 170.0) fail(ErrorKind::overflow, "meijer_g_3123: shape too large");
    const double lz = std::log(z);
    const double pi_sin_a = kPi / std::sin(kPi * a);

    // sum_k (-1)^k Gamma(a-k) z^{e0+k} / (e0+k), k from k0
    const double e0 = p.shifted ? d : 0.0;
    const int k0 = p.shifted ? 0 : 1;
    double g = std::tgamma(a);
    for (int k = 0; k < k0; ++k) g /= (a - (k + 1));
    double zpow = std::exp((e0 + k0) * lz);
    double s1 = 0.0, s1_max = 0.0, s1_abs = 0.0;
    std::int64_t terms = 0;
    for (int k = k0;; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double t = sign * g * zpow / (e0 + k);
        s1 += t;
        s1_abs += std::abs(t);
        s1_max = std::max(s1_max, std::abs(s1));
        ++terms;
        const double kn = k + 1.0;
        const double ratio = z / std::abs(a - kn);
        if (kn > a + 1.0 && ratio < 0.5 &&
            std::abs(t) * ratio / (1.0 - ratio) <= 1e-17 * std::abs(s1))
            break;
        if (terms > 100000)
            fail(ErrorKind::no_convergence, "meijer_g_3123: slater sum stalled");
        g /= (a - kn);
        zpow *= z;
    }

    // sum_k z^{a+e0+k} / (k! (a+e0+k))
    const double f0 = a + e0;
    double w = std::exp(f0 * lz);
    double s2 = 0.0, s2_abs = 0.0;
    for (int k = 0;; ++k) {
        const double t = w / (f0 + k);
        s2 += t;
        s2_abs += std::abs(t);
        ++terms;
        const double ratio = z / (k + 1.0);
        if (ratio < 0.5 && t * ratio / (1.0 - ratio) <= 1e-17 * std::abs(s2)) break;
        if (terms > 200000)
            fail(ErrorKind::no_convergence, "meijer_g_3123: slater sum stalled");
        w *= z / (k + 1.0);
    }

    double head;
    if (p.shifted)
        head = std::tgamma(a + d) * kPi / std::sin(kPi * d);
    else
        head = std::tgamma(a) * (digamma(a) - lz);

    const double value = head - s1 + pi_sin_a * s2;
    const double scale = std::abs(head) + s1_abs + std::abs(pi_sin_a) * s2_abs;
    guard = std::max({s1_max, std::abs(pi_sin_a * s2), std::abs(head)}) >
            1e6 * std::abs(value);
    EvalResult r;
    r.value = value;
    r.abs_error_bound = 16.0 * std::numeric_limits<double>::epsilon() * scale;
    r.terms_used = terms;
    r.method = EvalMethod::slater;
    return r;
}

// Mellin-Barnes line integral along Re s = c:
//   G = (1/pi) int_0^inf Re[F(c+it) z^{c+it}] dt,
//   F(s) = Gamma(b1-s)Gamma(b2-s)Gamma(b3-s)Gamma(1-a1+s)/Gamma(a2-s).
EvalResult contour(const Pattern& p, double z) {
    const double b1 = p.shifted ? p.d : 0.0;
    const double b3 = p.a + b1;
    const double a1 = b1;
    const double lz = std::log(z);

    // The line must pass between the right poles (from 0) and the left
    // poles (from a1-1). Its position trades the size of z^c against the
    // nearby poles.
    const double left = a1 - 1.0;
    const double right = 0.0;
    const double half = 0.5 * (right - left);
    double c;
    if (lz < 0.0)
        c = right - std::min(half, 2.0 / -lz);
    else if (lz > 0.0)
        c = left + std::min(half, 2.0 / lz);
    else
        c = left + half;

    auto log_f = [&](double t) {
        const cplx s(c, t);
        return log_gamma(cplx(b1) - s) + log_gamma(-s) + log_gamma(cplx(b3) - s) +
               log_gamma(cplx(1.0 - a1) + s) - log_gamma(cplx(1.0) - s) + s * lz;
    };
    auto f = [&](double t) { return std::exp(log_f(t)).real(); };

    double peak = std::exp(log_f(0.0).real());
    double t_end = 1.0;
    for (double t = 1.0; t < 4096.0; t *= 1.25) {
        const double m = std::exp(log_f(t).real());
        peak = std::max(peak, m);
        t_end = t;
        if (m < 1e-20 * peak && t > 2.0) break;
    }
    const double width = std::min(1.0, 6.0 / std::max(1.0, std::abs(lz)));
    std::vector<double> breaks;
    for (double t = 0.0; t < t_end; t += width) breaks.push_back(t);
    breaks.push_back(t_end);
    const auto q = integrate_pieces(f, breaks, {1e-13, 1e-14 * peak});

    EvalResult r;
    r.value = q.value / kPi;
    r.abs_error_bound =
        q.abs_error / kPi + 64.0 * std::numeric_limits<double>::epsilon() * peak;
    r.terms_used = static_cast<std::int64_t>(breaks.size());
    r.method = EvalMethod::contour;
    return r;
}

// The integral the Meijer-G instance represents:
//   pattern (0,1;0,0,a):      int_0^inf Gamma(a, zx)/(1+x) dx
//   pattern (d,1;d,0,a+d):    int_0^inf x^-d Gamma(a+d, zx)/(1+x) dx
// evaluated after the substitution y = zx.
EvalResult host_integral(const Pattern& p, double z) {
    const double s = p.a + p.d;
    const double top = s + 40.0 * std::sqrt(s) + 80.0;
    auto qf = [&](double y) {
        if (y <= 0.0) return 1.0;
        return reg_upper_gamma(s, y);
    };
    QuadResult q;
    if (!p.shifted) {
        auto f = [&](double y) { return qf(y) / (z + y); };
        std::vector<double> br{0.0};
        if (z < 1.0) {
            for (double e = z; e < std::min(1.0, 0.5 * s); e *= 8.0) br.push_back(e);
        }
        for (double y : {0.5 * s, s, s + 5.0 * std::sqrt(s) + 5.0, top})
            if (y > br.back()) br.push_back(y);
        q = integrate_pieces(f, br, {1e-13});
    } else {
        const double d = p.d;
        auto f = [&](double y) {
            if (y <= 0.0) return 0.0;
            return std::pow(y, -d) * qf(y) / (z + y);
        };
        const double first = std::min(1.0, std::max(z, 1e-300));
        const auto q0 = integrate_endpoint_singular(f, 0.0, first, {1e-13});
        std::vector<double> br{first};
        for (double y : {0.5 * s, s, s + 5.0 * std::sqrt(s) + 5.0, top})
            if (y > br.back()) br.push_back(y);
        const auto q1 = integrate_pieces(f, br, {1e-13});
        q.value = q0.value + q1.value;
        q.abs_error = q0.abs_error + q1.abs_error;
    }
    const double pref =
        p.shifted ? std::tgamma(s) * std::pow(z, p.d) : std::tgamma(s);
    EvalResult r;
    r.value = pref * q.value;
    r.abs_error_bound = pref * q.abs_error;
    r.terms_used = 0;
    r.method = EvalMethod::host_integral;
    return r;
}

double rel_diff(double x, double y) {
    return std::abs(x - y) / std::max(std::abs(x), std::abs(y));
}

}  // namespace

cplx log_gamma(cplx z) {
    if (z.real() <= 0.0 && z.imag() == 0.0 && std::floor(z.real()) == z.real())
        fail(ErrorKind::pole, "log_gamma: pole");
    cplx shift(0.0, 0.0);
    while (std::abs(z) < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    static const double bern[] = {1.0 / 6,     -1.0 / 30,   1.0 / 42,
                                  -1.0 / 30,   5.0 / 66,    -691.0 / 2730,
                                  7.0 / 6,     -3617.0 / 510};
    const cplx zi = 1.0 / z;
    const cplx zi2 = zi * zi;
    cplx corr(0.0, 0.0);
    cplx p = zi;
    for (int k = 1; k <= 8; ++k) {
        corr += bern[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= zi2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + corr - shift;
}

EvalResult meijer_g_3123(double b_top, double b2, double b3, double a1,
                         double a2, double z, MeijerPath path) {
    const Pattern p = classify(b_top, b2, b3, a1, a2);
    if (!(z > 0.0)) fail(ErrorKind::domain, "meijer_g_3123: need z > 0");
    const bool coincident = near_integer(p.a) || (p.shifted && near_integer(p.a + p.d));

    switch (path) {
        case MeijerPath::slater: {
            if (coincident)
                fail(ErrorKind::parameter_pattern,
                     "meijer_g_3123: residue sums need simple poles");
            bool guard = false;
            return slater(p, z, guard);
        }
        case MeijerPath::contour:
            return contour(p, z);
        case MeijerPath::host_integral:
            return host_integral(p, z);
        case MeijerPath::checked: {
            const EvalResult c = contour(p, z);
            if (coincident) return c;
            bool guard = false;
            const EvalResult s = slater(p, z, guard);
            const double diff = rel_diff(s.value, c.value);
            if (diff > 1e-5)
                fail(ErrorKind::conditioning,
                     "meijer_g_3123: residue and contour paths disagree");
            return guard ? c : s;
        }
        case MeijerPath::automatic:
            break;
    }
    if (z > 20.0) return host_integral(p, z);
    if (!coincident) {
        try {
            bool guard = false;
            const EvalResult s = slater(p, z, guard);
            if (!guard) return s;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::no_convergence && e.kind() != ErrorKind::overflow) throw;
        }
    }
    return contour(p, z);
}

}  // namespace irislab
