#ifndef TWOFLUID_EIGENSTRUCTURE_HPP
#define TWOFLUID_EIGENSTRUCTURE_HPP

#include <array>

#include <Eigen/Dense>

#include "twofluid/state.hpp"

namespace twofluid {

using Matrix7 = Eigen::Matrix<double, 7, 7>;
using Vector7 = Eigen::Matrix<double, 7, 1>;

inline constexpr double kDefaultResonanceDelta = 1e-8;

// Quasilinear variable vector (alpha1, u1, p1, s1, u2, p2, s2).
Vector7 primitive_to_quasilinear(const MixturePrimitive& U,
                                 const StiffenedGas& eos1, const StiffenedGas& eos2);
MixturePrimitive quasilinear_to_primitive(const Vector7& V,
                                          const StiffenedGas& eos1, const StiffenedGas& eos2);

// M(U) of the quasilinear form dU/dt + M(U) dU/dx = 0 (new-model closure).
// Block lower triangular: M[0][1..6] = 0 and the cross-phase 3x3 blocks vanish.
Matrix7 assemble_quasilinear(const MixturePrimitive& U,
                             const StiffenedGas& eos1, const StiffenedGas& eos2);

// min over k and +- of |u - (u_k +- c_k)| / c_k.
double resonance_margin(const MixturePrimitive& U,
                        const StiffenedGas& eos1, const StiffenedGas& eos2);

// Analytic eigenvalues in the fixed order (u, u1+c1, u1-c1, u1, u2+c2, u2-c2, u2).
Vector7 analytic_eigenvalues(const MixturePrimitive& U,
                             const StiffenedGas& eos1, const StiffenedGas& eos2);

struct EigenStructure {
  Vector7 lambda;           // ordered as above; columns of R match slot for slot
  Matrix7 R;                // right eigenvectors, M R = R diag(lambda)
  double resonance_margin;  // relative distance to the nearest resonance
  double condition_number;  // 2-norm condition of R
};

// Throws ResonanceError when the margin is at or below delta_res.
EigenStructure eigenstructure(const MixturePrimitive& U,
                              const StiffenedGas& eos1, const StiffenedGas& eos2,
                              double delta_res = kDefaultResonanceDelta);

enum class FieldNature { LinearlyDegenerate, GenuinelyNonlinear };

struct FieldClassification {
  std::array<double, 7> grad_lambda_dot_r;  // FD gradient of lambda_j . r_j
  std::array<FieldNature, 7> nature;
};

// Central finite differences with per-component step 1e-6 (1 + |component|).
// The interface field u is evaluated in the variables (alpha1, u1, p1, m1, u2, p2, m2).
FieldClassification classify_fields(const MixturePrimitive& U,
                                    const StiffenedGas& eos1, const StiffenedGas& eos2,
                                    double delta_res = kDefaultResonanceDelta);

struct Symmetrizer {
  Matrix7 P;  // symmetric positive definite, P M symmetric
  double theta_alpha;
  Eigen::Vector3d y1, y2;
};

// Constructive symmetrizer: P_k = diag(rho_k^2 c_k^2, 1, 1) and y_{k,alpha} from the
// 2x2 system (M_k^T - u I) y = P_k z_k, invertible away from resonance.
Symmetrizer symmetrizer(const MixturePrimitive& U,
                        const StiffenedGas& eos1, const StiffenedGas& eos2,
                        double delta_res = kDefaultResonanceDelta);

}  // namespace twofluid

#endif
