#pragma once

#include <optional>

#include "anomalia/forms.hpp"

namespace anomalia {

/**
 * Lagrangian extension of the dual cyclic group of order n: a metric group
 * (A, q) with |A| = n^2, an embedding of that dual group as a Lagrangian
 * subgroup L (stored through the image of its generator), and a chosen lift
 * of the generator of the cyclic quotient A/L.
 *
 * Construction validates: iota injective of order n, q = 0 on L, L equal to
 * its orthogonal complement, the lift generating the quotient, and the
 * integrality n^2 q(lift) in Z that makes the anomaly index well defined.
 */
class LagrangianExtension {
public:
    LagrangianExtension(MetricGroup metric, GroupElt iota_gen, GroupElt lift);

    std::int64_t n() const { return n_; }
    const MetricGroup& metric() const { return metric_; }
    const FinAbGroup& group() const { return metric_.group(); }
    const GroupElt& iota_generator() const { return iota_gen_; }
    const GroupElt& lift_of_one() const { return lift_; }
    const Subgroup& lagrangian() const { return lagrangian_; }

    /// Image of the k-th power of the dual generator.
    GroupElt iota(std::int64_t k) const { return group().scaled(k, iota_gen_); }

    /// Degree of an element under the stored quotient identification:
    /// the unique d with x - d*lift in L.
    std::int64_t degree(const GroupElt& x) const;

    /// Degree induced by the perfect pairing: dq(x, iota(1)) = deg(x)/n.
    std::int64_t pairing_degree(const GroupElt& x) const;

    /// j = n^2 q(lift) mod n; independent of the choice of lift.
    std::int64_t anomaly_index() const { return anomaly_index_; }

private:
    MetricGroup metric_;
    GroupElt iota_gen_;
    GroupElt lift_;
    Subgroup lagrangian_;
    std::int64_t n_ = 1;
    std::int64_t anomaly_index_ = 0;
};

/// (Z_n x Z_n, q(a,b) = ab/n), iota the first-factor inclusion, lift (0,1).
LagrangianExtension standard_extension(std::int64_t n);

/**
 * Twisted double of the cyclic group of order n with class index j: pairs
 * (a, b) with carry group law (a,b)+(a',b') = (a+a' mod n, b+b'+2j*carry)
 * and q(a,b) = ab/n + j a^2/n^2, re-presented on invariant factors. The
 * construction is validated exhaustively; anomaly_index(result) = j.
 */
LagrangianExtension twisted_double_cyclic(std::int64_t n, std::int64_t j);

/**
 * The order-three extensions of the dual of Z_{3m}: for odd m realized on
 * Z_{9m} + Z_m with q(x,y) = +-x^2/9m -+ y^2/m and iota generated by the
 * simple current (9m-3, 1), lift (1,0); for even m (where that presentation
 * is degenerate) the twisted double carrying the same class. sign = +1 gives
 * anomaly index m, sign = -1 gives index -m (= 2m).
 */
LagrangianExtension order3_extension(std::int64_t m, int sign);

/// All Lagrangian subgroups of M: |L|^2 = |A|, q zero on L, L = L^perp.
/// Empty when |A| is not a perfect square.
std::vector<Subgroup> enumerate_lagrangians(const MetricGroup& m,
                                            std::int64_t max_order = kDefaultMaxOrder);

/**
 * Group law on extensions of the same dual group: restrict q1 + q2 to the
 * orthogonal complement of the antidiagonal D = {(iota1(x), -iota2(x))} and
 * quotient by D. Degrees are matched through the canonical pairing. The
 * anomaly index is additive.
 */
LagrangianExtension boxplus(const LagrangianExtension& e1, const LagrangianExtension& e2);

std::int64_t anomaly_index(const LagrangianExtension& e);

/**
 * Constructive trivialization: searches for a lift x of a quotient generator
 * with q(x) = 0; when found, the character m -> dq(iota(m), x) assembles an
 * isometry to the standard extension mapping iota onto iota. Succeeds iff
 * anomaly_index(e) = 0.
 */
std::optional<MetricIso> trivialize(const LagrangianExtension& e);

/// Isometry respecting the embeddings (t(iota1(x)) = iota2(x)), if one exists.
std::optional<MetricIso> lex_isomorphism(const LagrangianExtension& e1,
                                         const LagrangianExtension& e2);
inline bool lex_isomorphic(const LagrangianExtension& e1, const LagrangianExtension& e2) {
    return lex_isomorphism(e1, e2).has_value();
}

/**
 * 3-cochain table on a finite abelian group with values in Q/Z; construction
 * checks the cocycle identity on all quadruples.
 */
class Cocycle3 {
public:
    Cocycle3(FinAbGroup group, std::vector<QmodZ> table);

    const FinAbGroup& group() const { return group_; }
    QmodZ operator()(const GroupElt& a, const GroupElt& b, const GroupElt& c) const;

    Cocycle3 operator+(const Cocycle3& o) const;
    bool operator==(const Cocycle3& o) const {
        return group_ == o.group_ && table_ == o.table_;
    }

private:
    FinAbGroup group_;
    std::vector<QmodZ> table_; // indexed (idx_a * |G| + idx_b) * |G| + idx_c
};

/// Standard representative of the class j in H^3 of the cyclic group:
/// w_j(a,b,c) = j * a * carry(b,c) / n.
Cocycle3 standard_cocycle(std::int64_t n, std::int64_t j);

/// Alternating sum over the six permutations of (x, y, z) with signs.
QmodZ psi_star(const Cocycle3& w, const GroupElt& x, const GroupElt& y, const GroupElt& z);

/// True iff psi_star vanishes on every triple.
bool is_abelian_class(const Cocycle3& w);

} // namespace anomalia
