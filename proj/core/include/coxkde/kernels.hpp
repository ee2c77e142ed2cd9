#pragma once

#include <span>
#include <vector>

namespace coxkde {

// Univariate polynomial kernel supported on a closed interval, identically
// zero outside it. Moments and L2 norms come from exact coefficient
// integration; quadrature is only a cross-check.
class PolynomialKernel {
public:
    // coefficients[i] multiplies u^i on [lower, upper]
    PolynomialKernel(std::vector<double> coefficients, double lower, double upper, int order);

    double operator()(double u) const noexcept;

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }
    int order() const noexcept { return order_; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }

    // exact integral of u^j * k(u) over the support
    double moment(int j) const;
    // exact integral of k(u)^2 over the support
    double l2_norm_squared() const;

private:
    std::vector<double> coefficients_;
    double lower_;
    double upper_;
    int order_;
};

// One-sided order-2 time kernel: (30u^2 - 36u + 9) on [0, 1].
const PolynomialKernel& time_kernel();
// Symmetric order-2 covariate kernel: (9/8 - 15/8 u^2) on [-1, 1].
const PolynomialKernel& covariate_kernel();

double eval_time_kernel(double u) noexcept;
double eval_cov_kernel(double u) noexcept;

// k_b(u) = k(u / b) / b. Throws std::invalid_argument unless bandwidth > 0.
double scaled(const PolynomialKernel& kernel, double bandwidth, double u);

// Product of scaled covariate kernels over the components of v; the empty
// product is 1. Throws std::invalid_argument unless bandwidth > 0.
double product_cov_kernel(std::span<const double> v, double bandwidth);

// Composite Simpson rule with the given (even) number of panels.
template <class F>
double integrate_simpson(F&& f, double lower, double upper, int panels) {
    if (panels % 2 != 0) ++panels;
    const double step = (upper - lower) / panels;
    double sum = f(lower) + f(upper);
    for (int i = 1; i < panels; ++i) {
        sum += f(lower + i * step) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return sum * step / 3.0;
}

} // namespace coxkde
