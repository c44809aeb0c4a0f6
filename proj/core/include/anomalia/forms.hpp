#pragma once

#include <optional>
#include <vector>

#include "anomalia/group.hpp"
#include "anomalia/qmodz.hpp"

namespace anomalia {

/**
 * Quadratic form q: A -> Q/Z presented by its values on the generators of the
 * stored factorization plus the bilinear pairing dq(e_i, e_j):
 *
 *   q(sum n_i e_i) = sum n_i^2 q(e_i) + sum_{i<j} n_i n_j b(e_i, e_j).
 *
 * Construction validates the congruences that make this a well-defined
 * quadratic form on residue tuples: d_i^2 q(e_i) = 0, 2 d_i q(e_i) = 0 and
 * d_i b(e_i, e_j) = 0 in Q/Z. The pairing matrix is stored in full with
 * diagonal dq(e_i, e_i) = 2 q(e_i).
 */
class QuadraticForm {
public:
    QuadraticForm(FinAbGroup group, std::vector<QmodZ> diag,
                  std::vector<std::vector<QmodZ>> pairing);

    /// Form with all pairing entries off the diagonal equal to zero.
    static QuadraticForm diagonal(FinAbGroup group, std::vector<QmodZ> diag);
    static QuadraticForm zero(FinAbGroup group);

    const FinAbGroup& group() const { return group_; }
    const std::vector<QmodZ>& diag() const { return diag_; }
    const std::vector<std::vector<QmodZ>>& pairing() const { return pairing_; }

    QmodZ eval(const GroupElt& a) const;
    QmodZ bilinear(const GroupElt& a, const GroupElt& b) const;

    /// Radical of dq: the subgroup of elements pairing trivially with all of A.
    Subgroup radical() const;
    bool is_nondegenerate() const;

    /// Multiset of q-values over all of A, sorted.
    std::vector<QmodZ> value_multiset() const;

    bool operator==(const QuadraticForm& o) const {
        return group_ == o.group_ && diag_ == o.diag_ && pairing_ == o.pairing_;
    }

private:
    FinAbGroup group_;
    std::vector<QmodZ> diag_;
    std::vector<std::vector<QmodZ>> pairing_;
};

inline QmodZ eval_q(const QuadraticForm& f, const GroupElt& a) { return f.eval(a); }
inline QmodZ bilinear(const QuadraticForm& f, const GroupElt& a, const GroupElt& b) {
    return f.bilinear(a, b);
}

/// A quadratic form whose bilinear pairing is nondegenerate.
class MetricGroup {
public:
    explicit MetricGroup(QuadraticForm form);

    const FinAbGroup& group() const { return form_.group(); }
    const QuadraticForm& form() const { return form_; }
    QmodZ q(const GroupElt& a) const { return form_.eval(a); }
    QmodZ b(const GroupElt& a, const GroupElt& b2) const { return form_.bilinear(a, b2); }

    bool operator==(const MetricGroup& o) const { return form_ == o.form_; }

private:
    QuadraticForm form_;
};

/**
 * Signature mod 8 extracted from the Gauss sum
 * sum_a exp(2 pi i q(a)) = sqrt(|A|) exp(2 pi i sigma / 8).
 * Exact phases are accumulated as a multiset; only the final phase extraction
 * is floating point (tolerance 1e-6).
 */
int gauss_signature(const QuadraticForm& f);
inline int gauss_signature(const MetricGroup& m) { return gauss_signature(m.form()); }

/// Orthogonal direct sum (A1 + A2, q1 + q2).
MetricGroup direct_sum(const MetricGroup& m1, const MetricGroup& m2);
QuadraticForm direct_sum(const QuadraticForm& f1, const QuadraticForm& f2);

/// q restricted to a subgroup, presented on the subgroup's own invariant
/// factors; `basis` gives the ambient elements realizing the presentation.
struct RestrictedForm {
    QuadraticForm form;
    std::vector<GroupElt> basis;
};
RestrictedForm restrict_form(const QuadraticForm& f, const Subgroup& h);

/// {a : dq(a, h) = 0 for all h in H}. For nondegenerate forms
/// |H| * |H^perp| = |A| and (H^perp)^perp = H.
Subgroup orthogonal_complement(const MetricGroup& m, const Subgroup& h);

/**
 * Isometry between metric groups, stored as the images of the source
 * generators.
 */
struct MetricIso {
    MetricGroup source;
    MetricGroup target;
    std::vector<GroupElt> images;

    GroupElt apply(const GroupElt& a) const;
    MetricIso inverse() const;
    /// Exhaustive check: group isomorphism and q_target(apply(a)) = q_source(a).
    bool verify() const;
};

/**
 * Searches for an isometry. Fast necessary fingerprints first (canonical
 * factors, (order, q)-value multiset, signature), then backtracking over
 * generator images with candidates in ascending (order, q, element) order.
 * `pins` forces t(p.first) = p.second for given source/target element pairs.
 */
std::optional<MetricIso> find_isomorphism(
    const MetricGroup& m1, const MetricGroup& m2,
    const std::vector<std::pair<GroupElt, GroupElt>>& pins = {});

} // namespace anomalia
