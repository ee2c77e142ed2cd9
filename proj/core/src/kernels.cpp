#include "coxkde/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace coxkde {

namespace {

// exact integral over [lower, upper] of the polynomial with the given coefficients
double integrate_polynomial(std::span<const double> coefficients, double lower, double upper) {
    double sum = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const auto power = static_cast<int>(i) + 1;
        sum += coefficients[i] * (std::pow(upper, power) - std::pow(lower, power)) / power;
    }
    return sum;
}

} // namespace

PolynomialKernel::PolynomialKernel(std::vector<double> coefficients, double lower, double upper,
                                   int order)
    : coefficients_(std::move(coefficients)), lower_(lower), upper_(upper), order_(order) {
    if (coefficients_.empty()) throw std::invalid_argument("kernel: empty coefficient list");
    if (!(lower_ < upper_)) throw std::invalid_argument("kernel: support must be a proper interval");
}

double PolynomialKernel::operator()(double u) const noexcept {
    if (u < lower_ || u > upper_) return 0.0;
    double value = 0.0;
    for (std::size_t i = coefficients_.size(); i-- > 0;) {
        value = value * u + coefficients_[i];
    }
    return value;
}

double PolynomialKernel::moment(int j) const {
    if (j < 0) throw std::invalid_argument("kernel moment: negative order");
    // u^j * k(u) shifts every coefficient up by j powers
    std::vector<double> shifted(coefficients_.size() + static_cast<std::size_t>(j), 0.0);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        shifted[i + static_cast<std::size_t>(j)] = coefficients_[i];
    }
    return integrate_polynomial(shifted, lower_, upper_);
}

double PolynomialKernel::l2_norm_squared() const {
    std::vector<double> squared(2 * coefficients_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
        for (std::size_t j = 0; j < coefficients_.size(); ++j) {
            squared[i + j] += coefficients_[i] * coefficients_[j];
        }
    }
    return integrate_polynomial(squared, lower_, upper_);
}

const PolynomialKernel& time_kernel() {
    static const PolynomialKernel kernel({9.0, -36.0, 30.0}, 0.0, 1.0, 2);
    return kernel;
}

const PolynomialKernel& covariate_kernel() {
    static const PolynomialKernel kernel({9.0 / 8.0, 0.0, -15.0 / 8.0}, -1.0, 1.0, 2);
    return kernel;
}

double eval_time_kernel(double u) noexcept { return time_kernel()(u); }

double eval_cov_kernel(double u) noexcept { return covariate_kernel()(u); }

double scaled(const PolynomialKernel& kernel, double bandwidth, double u) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("scaled kernel: bandwidth must be > 0");
    return kernel(u / bandwidth) / bandwidth;
}

double product_cov_kernel(std::span<const double> v, double bandwidth) {
    if (!(bandwidth > 0.0)) throw std::invalid_argument("product kernel: bandwidth must be > 0");
    const PolynomialKernel& kernel = covariate_kernel();
    double product = 1.0;
    for (double component : v) {
        product *= kernel(component / bandwidth) / bandwidth;
        if (product == 0.0) break;
    }
    return product;
}

} // namespace coxkde
