#include "qjump/propagator.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qjump/linops.hpp"

namespace qjump {

Propagator::Propagator(Matrix generator) : gen_(std::move(generator)) {
    if (gen_.rows() != gen_.cols())
        throw DimensionError("Propagator: generator is not square");

    Eigen::ComplexEigenSolver<Matrix> solver(gen_);
    if (solver.info() == Eigen::Success) {
        eigvecs_ = solver.eigenvectors();
        eigvals_ = solver.eigenvalues();
        Eigen::FullPivLU<Matrix> lu(eigvecs_);
        if (lu.isInvertible()) {
            eigvecs_inv_ = lu.inverse();
            // Accept the spectral route only if it reproduces the Pade
            // exponential; a defective or ill-conditioned eigenbasis fails here.
            const double scale = std::max(1.0, gen_.cwiseAbs().colwise().sum().maxCoeff());
            bool ok = true;
            for (double t : {0.31 / scale, 1.7 / scale}) {
                Matrix spectral = eigvecs_ * (eigvals_ * t).array().exp().matrix().asDiagonal() * eigvecs_inv_;
                Matrix reference = expm(gen_, t);
                double ref_scale = std::max(1.0, max_abs(reference));
                if (max_abs(Matrix(spectral - reference)) > 1e-12 * ref_scale) {
                    ok = false;
                    break;
                }
            }
            spectral_ = ok;
        }
    }
}

Vector Propagator::apply(double t, const Vector& v) const {
    if (spectral_)
        return eigvecs_ * ((eigvals_ * t).array().exp() * (eigvecs_inv_ * v).array()).matrix();
    return expm(gen_, t) * v;
}

Matrix Propagator::matrix(double t) const {
    if (spectral_)
        return eigvecs_ * (eigvals_ * t).array().exp().matrix().asDiagonal() * eigvecs_inv_;
    return expm(gen_, t);
}

} // namespace qjump
