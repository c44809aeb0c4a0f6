#pragma once

#include <optional>

#include "anomalia/lagrangian.hpp"

namespace anomalia {

/// Central charge of a holomorphic theory; the calculator works under the
/// standing assumption c = 8k, so anything else is rejected.
class CentralCharge {
public:
    explicit CentralCharge(std::int64_t c) : c_(c) {
        if (c <= 0 || c % 8 != 0)
            throw InvalidInputError("CentralCharge: c must be a positive multiple of 8");
    }
    std::int64_t c() const { return c_; }
    std::int64_t k() const { return c_ / 8; }

private:
    std::int64_t c_;
};

/// Conformal weights mod 1 of the cycle-twisted sector:
/// h_i = i/n + (n^2 - 1) c / (24 n), i = 0..n-1. Exact rationals.
std::vector<QmodZ> twisted_sector_spectrum(CentralCharge c, std::int64_t n);

/// True iff 3 does not divide n or 24 divides c; agrees with
/// 0 being in the twisted-sector spectrum.
bool is_non_anomalous(CentralCharge c, std::int64_t n);

/**
 * Representation category of the cyclic orbifold as a Lagrangian extension:
 * the standard extension when non-anomalous; otherwise (n = 3m, k = +-1
 * mod 3) the order-three extension with q_-+ paired to k = +-1 and anomaly
 * index -km mod n.
 */
LagrangianExtension orbifold_metric_group(CentralCharge c, std::int64_t n);

/**
 * Consistency oracle: for every degree d with g = gcd(d, n), l = n/g, the
 * multiset of q-values on the degree-d part must be
 * {i/l + (n^2 - g^2) c / (24 n) : i = 0..l-1}, each with multiplicity g.
 */
bool graded_spectrum_check(const LagrangianExtension& e, CentralCharge c, std::int64_t n);

/// Order-3 subgroup verdict for the full permutation group on three copies:
/// anomalous unless k = 0 mod 3 (equivalently !is_non_anomalous(c, 3)).
bool s3_order3_anomalous(CentralCharge c);

/// Full answer for (c, n).
struct OrbifoldReport {
    std::int64_t n;
    std::int64_t c;
    std::int64_t k;
    std::vector<QmodZ> spectrum; // h_i, i = 0..n-1
    bool anomalous;
    std::int64_t anomaly_index;
    LagrangianExtension rep_category;
    std::optional<Subgroup> dual_lagrangian;
};

OrbifoldReport orbifold_report(CentralCharge c, std::int64_t n);

/**
 * Complementary Lagrangian giving the twisted orbifold: the cyclic subgroup
 * generated by a q-null transversal lift when the extension trivializes,
 * nothing when the orbifold is anomalous.
 */
std::optional<Subgroup> twisted_orbifold_partner(const OrbifoldReport& report);

/// The three twisted doubles of the 3-element cyclic group:
/// (Z3 x Z3, xy/3), (Z9, 4x^2/9), (Z9, 8x^2/9).
std::vector<std::pair<std::int64_t, MetricGroup>> z3_table();

} // namespace anomalia
