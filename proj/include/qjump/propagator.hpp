#pragma once

// Time propagator e^{G t} for a fixed generator G. Uses the eigendecomposition
// of G when it is numerically trustworthy (verified against the Pade route at
// construction), otherwise falls back to a fresh scaling-and-squaring
// exponential per call. apply() is const and safe to share across threads.

#include "qjump/types.hpp"

namespace qjump {

class Propagator {
public:
    explicit Propagator(Matrix generator);

    /// e^{G t} v
    Vector apply(double t, const Vector& v) const;

    /// e^{G t}
    Matrix matrix(double t) const;

    bool spectral() const { return spectral_; }
    const Matrix& generator() const { return gen_; }

private:
    Matrix gen_;
    Matrix eigvecs_, eigvecs_inv_;
    Vector eigvals_;
    bool spectral_ = false;
};

} // namespace qjump
