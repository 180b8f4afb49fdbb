#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "ngtele/heralded_circuit.hpp"
#include "ngtele/quadratic_form.hpp"
#include "ngtele/quadrature.hpp"

namespace ngtele {

/// Fidelity exponent  u^T M u  over ancilla_names() with its scalar prefactor.
struct FidelityExponent {
  Eigen::Matrix<std::complex<double>, 8, 8> M;
  Complex prefactor_log{0.0, 0.0};
};

/// Closed form for coherent inputs; prefactor 1/d0 with d0 = 2 beta (beta - alpha t1 t2).
FidelityExponent closed_form_m4(const HeraldConfig& cfg);
/// Closed form for squeezed-vacuum inputs.
FidelityExponent closed_form_m5(const HeraldConfig& cfg, double epsilon);

/// Integrates the teleportation overlap of a pipeline resource form exactly.
/// Works for any detector efficiency; the result has only ancilla variables.
QuadraticExponent fidelity_form(const QuadraticExponent& resource, const InputState& input);
FidelityExponent fidelity_exponent_pipeline(const HeraldConfig& cfg, const InputState& input);

double fidelity_coherent_closed(const HeraldConfig& cfg);
double fidelity_squeezed_closed(const HeraldConfig& cfg, double epsilon);
/// Exact value through the general pipeline and Gaussian integration (any efficiency).
double fidelity_exact(const HeraldConfig& cfg, const InputState& input);
/// Numerical overlap over the pipeline resource characteristic function.
double fidelity_quadrature(const InputState& input, const HeraldConfig& cfg, const QuadratureOptions& options = {});

/// (1 + tanh r)/2 for coherent inputs, sqrt[(1 + tanh(r+e))/2 (1 + tanh(r-e))/2] for squeezed vacuum.
double fidelity_tmsv(const InputState& input, double r);

enum class FidelityClass { SubClassical, Quantum, Secure };
/// F > 2/3 Secure, F > 1/2 Quantum; values within 1e-12 of a threshold count as not above it.
FidelityClass classify_fidelity(double fidelity);
std::string_view to_string(FidelityClass cls);

enum class FidelityMethod { ClosedForm, Quadrature };
std::string_view to_string(FidelityMethod method);

struct FidelityResult {
  double fidelity = 0.0;
  double probability = 0.0;
  double delta_f = 0.0;
  HeraldConfig config;
  FidelityMethod method = FidelityMethod::ClosedForm;
};

/// Closed forms for unit efficiency, quadrature otherwise.
FidelityResult evaluate_fidelity(const InputState& input, const HeraldConfig& cfg);
double delta_fidelity(const InputState& input, const HeraldConfig& cfg);

}  // namespace ngtele
