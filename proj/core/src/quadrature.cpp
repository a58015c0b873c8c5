#include "fwer/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fwer {
namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (nonnegative half; the rule is symmetric).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelResult {
    double kronrod;
    double error;  // |K15 - G7|
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;

    for (int j = 0; j < 7; ++j) {
        const double offset = half * kXgk[j];
        const double fsum = f(center - offset) + f(center + offset);
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) {  // odd Kronrod indices carry the Gauss nodes
            result_gauss += kWg[j / 2] * fsum;
        }
    }
    result_kronrod *= half;
    result_gauss *= half;
    return {result_kronrod, std::fabs(result_kronrod - result_gauss)};
}

struct Segment {
    double a, b;
};

}  // namespace

QuadratureResult integrate_gauss_kronrod(const std::function<double(double)>& f,
                                         double a, double b, double abs_tol,
                                         std::int64_t max_evaluations) {
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("integrate_gauss_kronrod: abs_tol must be positive");
    }
    if (a == b) {
        return {0.0, 0.0, 0};
    }

    const double total_length = std::fabs(b - a);
    QuadratureResult out;
    std::vector<Segment> stack{{a, b}};
    while (!stack.empty()) {
        const Segment seg = stack.back();
        stack.pop_back();

        const PanelResult panel = gk15(f, seg.a, seg.b);
        out.evaluations += 15;
        if (out.evaluations > max_evaluations) {
            throw std::runtime_error("integrate_gauss_kronrod: evaluation budget exhausted");
        }

        const double local_tol = abs_tol * (std::fabs(seg.b - seg.a) / total_length);
        const double width = std::fabs(seg.b - seg.a);
        if (panel.error <= local_tol || width < 1e-15 * total_length) {
            out.value += panel.kronrod;
            out.abs_error_estimate += panel.error;
        } else {
            const double mid = 0.5 * (seg.a + seg.b);
            stack.push_back({seg.a, mid});
            stack.push_back({mid, seg.b});
        }
    }
    return out;
}

namespace {

double simpson_recurse(const std::function<double(double)>& f, double a, double b,
                       double fa, double fm, double fb, double whole, double tol,
                       int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double split = left + right;
    if (depth <= 0 || std::fabs(split - whole) <= 15.0 * tol) {
        return split + (split - whole) / 15.0;
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  int max_depth) {
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("integrate_adaptive_simpson: abs_tol must be positive");
    }
    if (a == b) {
        return 0.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

}  // namespace fwer
