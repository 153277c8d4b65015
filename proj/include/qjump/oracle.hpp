#pragma once

// Closed-form expressions for the lambda = 0 demon model, used as analytic
// cross-checks of the matrix-exponential machinery and of the hidden-entropy
// computation. Everything here is built from scalar channel-rate arithmetic,
// independent of the Liouville-space code paths it validates.

#include "qjump/model.hpp"
#include "qjump/types.hpp"

namespace qjump {

/// System-state label for the split of a demon jump operator.
enum class SystemState { e, g };

struct AlphaTable {
    // alpha[k-5][x] for hidden channels k = 5..8, x in {e, g}
    std::array<std::array<double, 2>, 4> alpha{};

    double operator()(int k, SystemState x) const {
        return alpha[k - 5][x == SystemState::e ? 0 : 1];
    }
};

/// Commutator eigenvalues of the split demon operators:
/// sum_k [Lk^dag Lk, L_ky^{e/g}] = alpha_ky^{e/g} L_ky^{e/g}.
/// Requires lambda = 0; throws NumericalError otherwise.
AlphaTable alpha_table(const DemonParams& p);

/// A_k^{xx'}(t) = 2 (e^{(a_k^x + a_k^{x'}) t / 2} - 1) / (a_k^x + a_k^{x'}),
/// with the removable singularity at vanishing alpha sum evaluating to t.
double a_coefficient(int k, SystemState x, SystemState x2, double t, const AlphaTable& table);

/// The sinh-weighted hidden-jump sum of the closed form for e^{Gt}
/// (backward = true gives the e^{-ds_k}-weighted variant for e^{Gbar^dag t}).
/// 16x16, only the entries connecting states across a demon flip are nonzero.
/// The unspecified diagonal part of the closed form is excluded. Requires
/// lambda = 0 and no drive.
Matrix closed_form_hidden_block(const DemonParams& p, double t, bool backward = false);

/// Hidden entropy of a single interval between visible jumps,
///   log <<chi_to| e^{G t} |chi_from>> / <<chi_to| e^{Gbar^dag t} |chi_from>>,
/// evaluated through the closed-form blocks. Independent of t (the A factors
/// cancel in the ratio); equals -ln sum_k p_k e^{-ds_k}. chi_from == chi_to
/// returns 0. Requires gamma_x = 0 and lambda = 0; throws NumericalError for
/// a state pair not connected by hidden transitions.
double interval_hidden_entropy(const DemonParams& p, int chi_from, int chi_to, double t);

} // namespace qjump
