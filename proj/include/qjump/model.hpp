#pragma once

// Lindblad model with paired, entropy-labeled, visibility-tagged jump
// operators, plus the two-qubit demon instance and all Liouville-space
// generators derived from it.
//
// Conventions fixed for the whole library:
//   * joint basis ordering (|g,0>, |g,1>, |e,0>, |e,1>) = indices 0..3,
//     i.e. index = 2*x + y with x in {g=0, e=1} and y in {0, 1};
//   * tensor order X (x) Y throughout;
//   * vec() is column-stacking, so superoperators A.B read kron(B^T, A).

#include <array>
#include <string>
#include <vector>

#include "qjump/types.hpp"

namespace qjump {

struct JumpOperator {
    int id = 0;          // 1-based channel index k
    Matrix matrix;       // L_k
    double delta_s = 0;  // environmental entropy per jump, units of k_B
    int partner_id = 0;  // complementary channel k~
    bool visible = true;
};

struct LindbladModel {
    Index dim = 0;
    Matrix hamiltonian;
    std::vector<JumpOperator> jumps;
    std::vector<std::string> basis_labels;
    std::vector<std::string> warnings;  // non-fatal build diagnostics

    const JumpOperator& jump(int id) const;
    std::vector<int> visible_ids() const;
    std::vector<int> hidden_ids() const;
    double delta_s(int id) const { return jump(id).delta_s; }
};

struct DemonParams {
    double omega0 = 1.0;
    double beta_x_hot = 1.0;
    double beta_x_cold = 2.0;
    double beta_y_hot = 0.5;
    double beta_y_cold = 4.0;
    double gamma_x = 0.5;  // feedback suppression factors, in [0,1]
    double gamma_y = 0.5;
    double lambda = 0.0;   // |g,1><e,0| + h.c. coupling strength
    // bath coupling strengths Gamma: X-hot, X-cold, Y-hot, Y-cold
    std::array<double, 4> bath_rates = {1.0, 1.0, 1.0, 1.0};
    bool drive = false;            // adds drive_strength * (1 (x) sigma_x) to H
    double drive_strength = 1.0;

    void validate() const;  // throws ConfigError on invariant violations
};

/// Mean bath occupation (exp(beta*omega0) - 1)^{-1}.
double mean_occupation(double beta, double omega0);

/// Build the 4-dimensional two-qubit demon model: jumps 1..8 with channel
/// rates from the bath occupations, per-jump entropies +-beta*omega0,
/// partners (1,2),(3,4),(5,6),(7,8), channels 1..4 visible and 5..8 hidden.
LindbladModel build_demon_model(const DemonParams& p);

struct DetailedBalanceReport {
    struct Pair {
        int k = 0, k_tilde = 0;
        double residual = 0;  // max-entry residual of L_k - L_k~^dag e^{ds_k/2}
    };
    std::vector<Pair> pairs;
    double max_residual = 0;
};

/// Per-pair residuals of the operator detailed-balance condition.
DetailedBalanceReport validate_detailed_balance(const LindbladModel& m);

struct LiouvilleGenerators {
    Matrix h_cal;      // -i(1 (x) H - H^T (x) 1)
    Matrix l_nj;       // -(1/2) sum_k (1 (x) Lk^dag Lk + Lk^T Lk^* (x) 1)
    Matrix l_y;        // sum_{hidden k} Lk^* (x) Lk
    Matrix l_x;        // sum_{visible k} Lk^* (x) Lk
    Matrix g;          // h_cal + l_nj + l_y   (between visible jumps)
    Matrix g_bar_dag;  // h_cal + l_nj + l_y^dag   (backward evolution)
    Matrix g_full;     // g + l_x   (full Liouvillian)
};

LiouvilleGenerators liouville_generators(const LindbladModel& m);

/// J_k = L_k^* (x) L_k. Throws Error for unknown id.
Matrix jump_superoperator(const LindbladModel& m, int id);

} // namespace qjump
