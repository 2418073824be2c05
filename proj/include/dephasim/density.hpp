// density.hpp — Single-spin initial states and the 4x4 two-qubit density matrix
//
// Basis order: Φ₁ = |++⟩, Φ₂ = |+−⟩, Φ₃ = |−+⟩, Φ₄ = |−−⟩.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Dense>

#include "dephasim/errors.hpp"

namespace dephasim {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// rho = [[p, v], [v*, 1-p]] with 0 <= p <= 1 and |v|^2 <= p(1-p).
struct SpinInit {
    double p{0.5};
    cplx v{0.0, 0.0};

    bool feasible(double slack = 1e-12) const noexcept {
        return p >= 0.0 && p <= 1.0 && std::norm(v) <= p * (1.0 - p) + slack;
    }

    void validate() const {
        if (!(p >= 0.0 && p <= 1.0)) {
            std::ostringstream msg;
            msg << "spin population p must lie in [0, 1] (got " << p << ")";
            throw ValidationError(msg.str());
        }
        if (!feasible()) {
            std::ostringstream msg;
            msg << "spin coherence violates |v|^2 <= p(1-p) (|v|^2 = " << std::norm(v)
                << ", p(1-p) = " << p * (1.0 - p) << ")";
            throw ValidationError(msg.str());
        }
    }

    Matrix2c matrix() const {
        Matrix2c m;
        m << p, v, std::conj(v), 1.0 - p;
        return m;
    }
};

struct DensityTolerance {
    double hermitian{1e-12};
    double trace{1e-12};
    double eigenvalue{-1e-10};
};

class TwoQubitDensity {
public:
    TwoQubitDensity() : m_(Matrix4c::Zero()) {}
    explicit TwoQubitDensity(const Matrix4c& m) : m_(m) {}

    const Matrix4c& matrix() const noexcept { return m_; }
    cplx operator()(int i, int j) const { return m_(i, j); }

    double hermiticity_defect() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
    double trace_defect() const { return std::abs(m_.trace() - cplx(1.0, 0.0)); }

    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const {
        const Matrix4c h = 0.5 * (m_ + m_.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw NumericalError("density eigen-decomposition failed");
        return es.eigenvalues().minCoeff();
    }

    /// Hermiticity and trace only; positivity is left to callers that decompose anyway.
    void validate_structure(const DensityTolerance& tol = {}) const {
        if (!m_.allFinite()) throw ValidationError("density matrix has non-finite entries");
        if (hermiticity_defect() > tol.hermitian) {
            std::ostringstream msg;
            msg << "density matrix is not Hermitian (defect " << hermiticity_defect() << ")";
            throw ValidationError(msg.str());
        }
        if (trace_defect() > tol.trace) {
            std::ostringstream msg;
            msg << "density matrix trace differs from 1 by " << trace_defect();
            throw ValidationError(msg.str());
        }
    }

    void validate(const DensityTolerance& tol = {}) const {
        validate_structure(tol);
        const double lo = min_eigenvalue();
        if (lo < tol.eigenvalue) {
            std::ostringstream msg;
            msg << "density matrix is not positive semidefinite (min eigenvalue " << lo << ")";
            throw ValidationError(msg.str());
        }
    }

    /// Max-entry distance.
    double distance(const TwoQubitDensity& other) const { return (m_ - other.m_).cwiseAbs().maxCoeff(); }

private:
    Matrix4c m_;
};

/// ρ₀ = ρ₁ ⊗ ρ₂ in the Φ basis.
inline TwoQubitDensity initial_two_qubit(const SpinInit& s1, const SpinInit& s2) {
    s1.validate();
    s2.validate();
    const double p1 = s1.p, p2 = s2.p;
    const cplx v1 = s1.v, v2 = s2.v;
    const cplx c1 = std::conj(v1), c2 = std::conj(v2);
    Matrix4c m;
    // clang-format off
    m << p1 * p2,          p1 * v2,          v1 * p2,          v1 * v2,
         p1 * c2,          p1 * (1.0 - p2),  v1 * c2,          v1 * (1.0 - p2),
         c1 * p2,          c1 * v2,          (1.0 - p1) * p2,  (1.0 - p1) * v2,
         c1 * c2,          c1 * (1.0 - p2),  (1.0 - p1) * c2,  (1.0 - p1) * (1.0 - p2);
    // clang-format on
    return TwoQubitDensity(m);
}

} // namespace dephasim
