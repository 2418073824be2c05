// entanglement.hpp — Two-qubit concurrence, closed-form X-state concurrence, PPT witness

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Dense>

#include "dephasim/density.hpp"
#include "dephasim/errors.hpp"

namespace dephasim {

struct ConcurrenceResult {
    double value{0.0};
    std::array<double, 4> lambdas{};  // decreasing
};

namespace detail {

// Y⊗Y in the Φ basis.
inline Matrix4c spin_flip() {
    Matrix4c yy = Matrix4c::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

// W with ρ = W W†, from the eigen-decomposition with negative rounding clamped to zero.
inline Matrix4c density_factor(const Matrix4c& h) {
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    if (es.info() != Eigen::Success) throw NumericalError("concurrence: eigen-decomposition of rho failed");
    const double lo = es.eigenvalues().minCoeff();
    if (lo < DensityTolerance{}.eigenvalue) {
        std::ostringstream msg;
        msg << "density matrix is not positive semidefinite (min eigenvalue " << lo << ")";
        throw ValidationError(msg.str());
    }
    const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal();
}

} // namespace detail

/// λ_i are the square roots of the eigenvalues of ρ·(Y⊗Y)ρ*(Y⊗Y), decreasing;
/// C = max(0, λ₁−λ₂−λ₃−λ₄).
///
/// With ρ = W W† the product ρρ̃ is similar to τ†τ for the symmetric τ = Wᵀ(Y⊗Y)W, so the
/// λ_i are the singular values of τ. This avoids square roots of near-zero eigenvalues of
/// ρρ̃, which would amplify rounding noise to ~1e-8 for rank-deficient states.
inline ConcurrenceResult concurrence(const TwoQubitDensity& rho) {
    rho.validate_structure();
    const Matrix4c h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
    const Matrix4c w = detail::density_factor(h);
    const Matrix4c tau = w.transpose() * detail::spin_flip() * w;
    Eigen::JacobiSVD<Matrix4c> svd(tau);
    const Eigen::Vector4d sv = svd.singularValues();
    if (!sv.allFinite()) throw NumericalError("concurrence: singular value decomposition failed");

    ConcurrenceResult out;
    for (int i = 0; i < 4; ++i) out.lambdas[i] = sv(i);
    std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
    const double c = out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3];
    out.value = std::clamp(c, 0.0, 1.0);
    return out;
}

/// max{0, −2[√(p₁(1−p₁)p₂(1−p₂)) − |v₁||v₂| e^{−2γ}]} with γ = ϰ_ℓ²Γ_ℓ(t).
inline double x_state_concurrence(double p1, double p2, cplx v1, cplx v2, double gamma_l) {
    SpinInit{p1, v1}.validate();
    SpinInit{p2, v2}.validate();
    if (!(gamma_l >= 0.0)) throw ValidationError("x_state_concurrence: gamma_l must be >= 0");
    const double populations = std::sqrt(p1 * (1.0 - p1) * p2 * (1.0 - p2));
    const double coherence = std::abs(v1) * std::abs(v2) * std::exp(-2.0 * gamma_l);
    return std::max(0.0, -2.0 * (populations - coherence));
}

/// Transpose on the second qubit: (i₁i₂, j₁j₂) ↦ (i₁j₂, j₁i₂).
inline Matrix4c partial_transpose(const Matrix4c& m) {
    Matrix4c out;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int j2 = 0; j2 < 2; ++j2) out(2 * i1 + j2, 2 * j1 + i2) = m(2 * i1 + i2, 2 * j1 + j2);
    return out;
}

inline bool ppt_negative(const TwoQubitDensity& rho, double threshold = -1e-10) {
    rho.validate();
    const Matrix4c pt = partial_transpose(0.5 * (rho.matrix() + rho.matrix().adjoint()));
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(pt, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("ppt_negative: eigen-decomposition failed");
    return es.eigenvalues().minCoeff() < threshold;
}

} // namespace dephasim
