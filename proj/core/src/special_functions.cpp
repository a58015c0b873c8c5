#include "fwer/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fwer {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Rational minimax erfc kernel (Cody's three-branch scheme). Relative error
// stays within a few ulp over the whole range, which keeps the CDF's absolute
// error well under 1e-15.
double erfc_kernel(double x) {
    constexpr double kA[5] = {3.16112374387056560e+00, 1.13864154151050156e+02,
                              3.77485237685302021e+02, 3.20937758913846947e+03,
                              1.85777706184603153e-01};
    constexpr double kB[4] = {2.36012909523441209e+01, 2.44024637934444173e+02,
                              1.28261652607737228e+03, 2.84423683343917062e+03};
    constexpr double kC[9] = {5.64188496988670089e-01, 8.88314979438837594e+00,
                              6.61191906371416295e+01, 2.98635138197400131e+02,
                              8.81952221241769090e+02, 1.71204761263407058e+03,
                              2.05107837782607147e+03, 1.23033935479799725e+03,
                              2.15311535474403846e-08};
    constexpr double kD[8] = {1.57449261107098347e+01, 1.17693950891312499e+02,
                              5.37181101862009858e+02, 1.62138957456669019e+03,
                              3.29079923573345963e+03, 4.36261909014324716e+03,
                              3.43936767414372164e+03, 1.23033935480374942e+03};
    constexpr double kP[6] = {3.05326634961232344e-01, 3.60344899949804439e-01,
                              1.25781726111229246e-01, 1.60837851487422766e-02,
                              6.58749161529837803e-04, 1.63153871373020978e-02};
    constexpr double kQ[5] = {2.56852019228982242e+00, 1.87295284992346047e+00,
                              5.27905102951428412e-01, 6.05183413124413191e-02,
                              2.33520497626869185e-03};
    constexpr double kSqrtPiInv = 5.6418958354775628695e-01;
    constexpr double kThresh = 0.46875;
    constexpr double kXBig = 26.543;

    const double y = std::fabs(x);
    double result;
    if (y <= kThresh) {
        const double ysq = y * y;
        double xnum = kA[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + kA[i]) * ysq;
            xden = (xden + kB[i]) * ysq;
        }
        const double erf_val = x * (xnum + kA[3]) / (xden + kB[3]);
        return 1.0 - erf_val;
    }
    if (y <= 4.0) {
        double xnum = kC[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + kC[i]) * y;
            xden = (xden + kD[i]) * y;
        }
        result = (xnum + kC[7]) / (xden + kD[7]);
        const double ysq = std::trunc(y * 16.0) / 16.0;
        const double del = (y - ysq) * (y + ysq);
        result *= std::exp(-ysq * ysq) * std::exp(-del);
    } else if (y < kXBig) {
        const double ysq = 1.0 / (y * y);
        double xnum = kP[5] * ysq;
        double xden = ysq;
        for (int i = 0; i < 4; ++i) {
            xnum = (xnum + kP[i]) * ysq;
            xden = (xden + kQ[i]) * ysq;
        }
        result = ysq * (xnum + kP[4]) / (xden + kQ[4]);
        result = (kSqrtPiInv - result) / y;
        const double yt = std::trunc(y * 16.0) / 16.0;
        const double del = (y - yt) * (y + yt);
        result *= std::exp(-yt * yt) * std::exp(-del);
    } else {
        result = 0.0;
    }
    if (x < 0.0) {
        result = 2.0 - result;
    }
    return result;
}

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(what) + ": argument must be finite");
    }
}

void require_bvn_domain(double x, double rho, const char* what) {
    require_finite(x, what);
    require_finite(rho, what);
    if (!(x > 0.0)) {
        throw std::domain_error(std::string(what) + ": requires x > 0");
    }
    if (rho < 0.0 || rho >= 1.0) {
        throw std::domain_error(std::string(what) + ": requires rho in [0, 1)");
    }
}

}  // namespace

double std_normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_cdf(double x) {
    require_finite(x, "std_normal_cdf");
    return 0.5 * erfc_kernel(-x * kInvSqrt2);
}

double std_normal_sf(double x) {
    require_finite(x, "std_normal_sf");
    return 0.5 * erfc_kernel(x * kInvSqrt2);
}

double std_normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("std_normal_quantile: p must lie in (0, 1)");
    }

    // Rational initial estimate (relative error ~1.15e-9).
    constexpr double kQa[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr double kQb[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    constexpr double kQc[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00, 2.938163982698783e+00};
    constexpr double kQd[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double kPLow = 0.02425;

    double x;
    if (p < kPLow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((kQc[0] * q + kQc[1]) * q + kQc[2]) * q + kQc[3]) * q + kQc[4]) * q + kQc[5]) /
            ((((kQd[0] * q + kQd[1]) * q + kQd[2]) * q + kQd[3]) * q + 1.0);
    } else if (p <= 1.0 - kPLow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((kQa[0] * r + kQa[1]) * r + kQa[2]) * r + kQa[3]) * r + kQa[4]) * r + kQa[5]) * q /
            (((((kQb[0] * r + kQb[1]) * r + kQb[2]) * r + kQb[3]) * r + kQb[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((kQc[0] * q + kQc[1]) * q + kQc[2]) * q + kQc[3]) * q + kQc[4]) * q + kQc[5]) /
            ((((kQd[0] * q + kQd[1]) * q + kQd[2]) * q + kQd[3]) * q + 1.0);
    }

    // Newton refinement. For p >= 1/2 iterate on the tail, where 1 - p is
    // exact and the survival function keeps full relative precision.
    if (p >= 0.5) {
        const double s = 1.0 - p;
        for (int it = 0; it < 2; ++it) {
            const double err = std_normal_sf(x) - s;
            x += err / std_normal_pdf(x);
        }
    } else {
        for (int it = 0; it < 2; ++it) {
            const double err = std_normal_cdf(x) - p;
            x -= err / std_normal_pdf(x);
        }
    }
    return x;
}

QuadratureResult monhor_integral(double x, double rho) {
    require_bvn_domain(x, rho, "monhor_integral");
    if (rho == 0.0) {
        return {0.0, 0.0, 0};
    }
    const double xsq = x * x;
    const auto integrand = [xsq](double z) {
        return std::exp(-xsq / (1.0 + z)) / std::sqrt(1.0 - z * z);
    };
    return integrate_gauss_kronrod(integrand, 0.0, rho, 1e-13);
}

double bvn_cdf_equal(double x, double rho) {
    const double phi_x = std_normal_cdf(x);
    return phi_x * phi_x + monhor_integral(x, rho).value / (2.0 * kPi);
}

double bvn_cdf_oracle(double x, double rho) {
    require_bvn_domain(x, rho, "bvn_cdf_oracle");
    const double s = std::sqrt(1.0 - rho * rho);
    const auto integrand = [x, rho, s](double u) {
        return std_normal_pdf(u) * std_normal_cdf((x - rho * u) / s);
    };
    return integrate_adaptive_simpson(integrand, -8.0, x, 1e-10);
}

double bvn_lower_bound_thm32(double x, double rho) {
    require_finite(x, "bvn_lower_bound_thm32");
    require_finite(rho, "bvn_lower_bound_thm32");
    if (!(x >= 2.0)) {
        throw std::domain_error("bvn_lower_bound_thm32: requires x >= 2");
    }
    if (rho < 0.0 || rho > 1.0) {
        throw std::domain_error("bvn_lower_bound_thm32: requires rho in [0, 1]");
    }
    const double phi_x = std_normal_cdf(x);
    return phi_x * phi_x +
           std::asin(rho) * std::exp(-x * x / (1.0 + 0.5 * rho)) / (2.0 * kPi);
}

double bvn_lower_bound_monhor(double x, double rho) {
    require_finite(x, "bvn_lower_bound_monhor");
    require_finite(rho, "bvn_lower_bound_monhor");
    if (!(x > 0.0)) {
        throw std::domain_error("bvn_lower_bound_monhor: requires x > 0");
    }
    if (rho < 0.0 || rho > 1.0) {
        throw std::domain_error("bvn_lower_bound_monhor: requires rho in [0, 1]");
    }
    const double phi_x = std_normal_cdf(x);
    return phi_x * phi_x + std::asin(rho) * std::exp(-x * x) / (2.0 * kPi);
}

double threshold_M(double x) {
    require_finite(x, "threshold_M");
    if (x < 2.0 || x > 5.0) {
        throw std::domain_error("threshold_M: requires x in [2, 5]");
    }
    return std::exp(-x * x / 1.25) / std_normal_sf(x);
}

double threshold_G(double x) {
    require_finite(x, "threshold_G");
    if (!(x > 0.0)) {
        throw std::domain_error("threshold_G: requires x > 0");
    }
    const double xsq = x * x;
    return 0.5 * (std::exp(-xsq) + std::exp(-xsq / 1.25));
}

double threshold_H(double x) {
    require_finite(x, "threshold_H");
    if (!(x > 0.0)) {
        throw std::domain_error("threshold_H: requires x > 0");
    }
    const double xsq = x * x;
    return 0.5 * (std::exp(-xsq) + std::exp(-xsq / 1.011375));
}

}  // namespace fwer
