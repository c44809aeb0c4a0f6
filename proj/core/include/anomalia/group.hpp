#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "anomalia/errors.hpp"
#include "anomalia/qmodz.hpp"

namespace anomalia {

/// Element of a finite abelian group: one residue per cyclic factor.
using GroupElt = std::vector<std::int64_t>;

constexpr std::int64_t kDefaultMaxOrder = 20000;

/**
 * Finite abelian group presented as a product of cyclic factors
 * Z_{d1} x ... x Z_{dr}. Elements are residue tuples against this fixed
 * factorization; canonicalize() produces the invariant-factor form together
 * with an isomorphism.
 */
class FinAbGroup {
public:
    explicit FinAbGroup(std::vector<std::int64_t> factors);

    const std::vector<std::int64_t>& factors() const { return factors_; }
    std::size_t rank() const { return factors_.size(); }
    std::int64_t order() const { return order_; }
    std::int64_t exponent() const;

    GroupElt zero() const { return GroupElt(factors_.size(), 0); }
    bool contains(const GroupElt& a) const;
    void require(const GroupElt& a) const; // throws InvalidInputError

    GroupElt add(const GroupElt& a, const GroupElt& b) const;
    GroupElt neg(const GroupElt& a) const;
    GroupElt scaled(std::int64_t k, const GroupElt& a) const;
    std::int64_t order_of(const GroupElt& a) const;

    /// All elements in lexicographic order.
    std::vector<GroupElt> elements() const;
    std::int64_t index_of(const GroupElt& a) const;
    GroupElt element_at(std::int64_t idx) const;

    bool operator==(const FinAbGroup& o) const { return factors_ == o.factors_; }
    bool operator!=(const FinAbGroup& o) const { return !(*this == o); }

private:
    std::vector<std::int64_t> factors_;
    std::int64_t order_ = 1;
};

inline FinAbGroup make_group(std::vector<std::int64_t> ds) { return FinAbGroup(std::move(ds)); }

/**
 * Subgroup of a FinAbGroup, stored as the full sorted element set plus the
 * generators it was built from.
 */
class Subgroup {
public:
    static Subgroup generated(const FinAbGroup& parent, std::vector<GroupElt> gens);
    static Subgroup trivial(const FinAbGroup& parent);

    const FinAbGroup& parent() const { return parent_; }
    const std::vector<GroupElt>& elements() const { return elements_; }
    const std::vector<GroupElt>& generators() const { return generators_; }
    std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }
    bool contains(const GroupElt& a) const;

    bool operator==(const Subgroup& o) const {
        return parent_ == o.parent_ && elements_ == o.elements_;
    }
    bool operator<(const Subgroup& o) const { return elements_ < o.elements_; }

private:
    Subgroup(FinAbGroup parent, std::vector<GroupElt> elements, std::vector<GroupElt> gens)
        : parent_(std::move(parent)), elements_(std::move(elements)), generators_(std::move(gens)) {}

    FinAbGroup parent_;
    std::vector<GroupElt> elements_; // sorted
    std::vector<GroupElt> generators_;
};

inline Subgroup subgroup_generated(const FinAbGroup& g, std::vector<GroupElt> gens) {
    return Subgroup::generated(g, std::move(gens));
}

/**
 * Complete, duplicate-free list of the order-m subgroups, sorted by element
 * list. Returns an empty list when m does not divide |G|; throws
 * ResourceLimitError when |G| exceeds max_order.
 */
std::vector<Subgroup> all_subgroups_of_order(const FinAbGroup& g, std::int64_t m,
                                             std::int64_t max_order = kDefaultMaxOrder);

/// Every subgroup of G (union of all_subgroups_of_order over divisors).
std::vector<Subgroup> all_subgroups(const FinAbGroup& g,
                                    std::int64_t max_order = kDefaultMaxOrder);

/**
 * Structure of a finite abelian group given by an opaque element set and an
 * addition rule: invariant factors (ascending divisibility, order-1 factors
 * dropped), a basis realizing them, and coordinates for every element.
 */
struct AbelianStructure {
    std::vector<std::int64_t> factors;
    std::vector<GroupElt> basis;          // basis[i] has order factors[i]
    std::map<GroupElt, GroupElt> coords;  // element -> coordinates in `factors`
};

AbelianStructure decompose_abelian(
    const std::vector<GroupElt>& elements,
    const std::function<GroupElt(const GroupElt&, const GroupElt&)>& add,
    const GroupElt& zero);

/**
 * Quotient G/H in invariant-factor form with an explicit projection
 * (a surjective homomorphism with kernel exactly H) and a lift picking the
 * stored representative of each coset.
 */
class Quotient {
public:
    Quotient(const FinAbGroup& g, const Subgroup& h);

    const FinAbGroup& group() const { return group_; }
    const FinAbGroup& parent() const { return parent_; }

    GroupElt project(const GroupElt& a) const;
    GroupElt lift(const GroupElt& q) const;

private:
    GroupElt rep_of(const GroupElt& a) const;

    FinAbGroup parent_;
    FinAbGroup group_;
    std::map<GroupElt, GroupElt> rep_;        // element -> coset representative
    std::map<GroupElt, GroupElt> rep_coords_; // representative -> quotient coords
    std::vector<GroupElt> rep_basis_;         // representatives of quotient basis
};

inline Quotient quotient(const FinAbGroup& g, const Subgroup& h) { return Quotient(g, h); }

/// Invariant-factor form of G plus the isomorphism (quotient by the trivial
/// subgroup; project() is the iso, lift() its inverse on images).
Quotient canonicalize(const FinAbGroup& g);

/**
 * Dual pairing through the chosen basis: characters are indexed by elements
 * of the same coordinate lattice, chi(x) = sum_i chi_i x_i / d_i.
 */
QmodZ dual_character(const FinAbGroup& g, const GroupElt& chi, const GroupElt& x);

} // namespace anomalia
