#pragma once

#include <Eigen/Dense>
#include <vector>

#include "anomalia/forms.hpp"

namespace anomalia {

/**
 * Modular data of the pointed category attached to a metric group:
 *   T_a = exp(2 pi i q(a)),   S_ab = |A|^{-1/2} exp(-2 pi i dq(a, b)).
 * Labels are the group elements in lexicographic order. Floating point is
 * confined to this module; all inputs are exact.
 */
struct ModularData {
    std::vector<GroupElt> labels;
    Eigen::MatrixXcd S;
    Eigen::VectorXcd T; // diagonal
    int sigma = 0;      // Gauss signature mod 8
};

ModularData modular_data(const MetricGroup& m);

/// max |(S S*)_ij - delta_ij|
double unitarity_residual(const ModularData& md);

/// max |(S^2)_ij - P_ij| with P the permutation a -> -a of the labels.
double charge_conjugation_residual(const ModularData& md, const FinAbGroup& g);

/// max |((S T)^3 - e^{2 pi i sigma/8} S^2)_ij|
double modular_relation_residual(const ModularData& md);

/**
 * Verlinde coefficients N_{ab}^c = sum_x S_ax S_bx conj(S_cx) / S_0x rounded
 * to integers (tolerance tol); throws ModularityError when a rounding residue
 * exceeds tol. Tensor layout: N[a][b][c]. Memory limits this to |A| <= 128.
 */
std::vector<std::vector<std::vector<long>>> verlinde_fusion(const ModularData& md,
                                                            double tol = 1e-6);

/**
 * Checks N_{ab}^c = delta_{a+b,c} for every triple and reports the largest
 * entrywise deviation. For |A| <= 81 the tensor rows are computed directly
 * from S; above that the same bound is certified through
 * ||N^(a) - P_a||_max <= sqrt(|A|) ||S D_a - P_a S||_max + ||S S* - I||_max,
 * which avoids the |A|^4 sum at identical rigor.
 */
double verlinde_group_law_residual(const ModularData& md, const FinAbGroup& g);

/// Multiset {q(a) : a in A}, sorted. Invariant under isometry.
std::vector<QmodZ> twist_spectrum(const QuadraticForm& f);
inline std::vector<QmodZ> twist_spectrum(const MetricGroup& m) {
    return twist_spectrum(m.form());
}

} // namespace anomalia
