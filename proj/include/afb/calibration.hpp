#pragma once

#include <functional>
#include <span>
#include <vector>

#include "afb/filterbank.hpp"
#include "afb/waveform.hpp"

namespace afb {

struct GradReport {
  double max_rel_error = 0.0;
  std::vector<double> per_parameter;  // relative error per parameter
  std::vector<double> params;         // the parameter point evaluated
  double step = 0.0;
};

// Least-squares synthesis gains: minimize sum_j |x_j - R_j g|^2 where column
// n of R_j is the unit-gain single-filter reconstruction of x_j. Solved by
// damped normal equations (lambda = 1e-8 * mean diagonal). The fit never
// worsens the objective relative to g = 1.
std::vector<double> fit_synthesis_gains(const Filterbank& bank,
                                        const std::vector<Waveform>& calib);

// Residual sum of squares of the identity-mask roundtrip against the targets
// for a given gain vector. The quantity fit_synthesis_gains minimizes.
double reconstruction_objective(const Filterbank& bank,
                                const std::vector<Waveform>& calib,
                                std::span<const double> gains);

// Closed-form partials of the parametric filters with respect to (f_w, f_c),
// per filter, on the construction grid with the construction window. For
// analytic banks the Hilbert extension commutes with the parameter
// derivative, so d(analytic u)/dtheta = analytic(d u_real/dtheta).
// Chain rule to (f1, f2): f_w = f2 - f1, f_c = (f1 + f2) / 2.
struct ParamSincGradients {
  ComplexMatrix d_fw;  // N x L
  ComplexMatrix d_fc;  // N x L
};

ParamSincGradients param_filter_gradients(
    const ParamSincParams& params, const FilterbankConfig& config,
    bool analytic = true, FilterWindow window = FilterWindow::hamming);

// Central finite differences of a scalar objective, compared against a
// supplied analytic gradient. step must be positive.
GradReport finite_diff_check(
    const std::function<double(std::span<const double>)>& objective,
    std::span<const double> params, std::span<const double> analytic_grad,
    double step);

}  // namespace afb
