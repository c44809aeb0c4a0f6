#include "anomalia/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace anomalia {

FinAbGroup::FinAbGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
    for (const auto d : factors_) {
        if (d <= 0) throw InvalidInputError("FinAbGroup: cyclic orders must be positive");
        if (order_ > kDefaultMaxOrder * kDefaultMaxOrder / d)
            throw InvalidInputError("FinAbGroup: order too large");
        order_ *= d;
    }
}

std::int64_t FinAbGroup::exponent() const {
    std::int64_t e = 1;
    for (const auto d : factors_) e = std::lcm(e, d);
    return e;
}

bool FinAbGroup::contains(const GroupElt& a) const {
    if (a.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < 0 || a[i] >= factors_[i]) return false;
    return true;
}

void FinAbGroup::require(const GroupElt& a) const {
    if (!contains(a)) throw InvalidInputError("element does not belong to the group");
}

GroupElt FinAbGroup::add(const GroupElt& a, const GroupElt& b) const {
    GroupElt r(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) r[i] = (a[i] + b[i]) % factors_[i];
    return r;
}

GroupElt FinAbGroup::neg(const GroupElt& a) const {
    GroupElt r(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) r[i] = (factors_[i] - a[i]) % factors_[i];
    return r;
}

GroupElt FinAbGroup::scaled(std::int64_t k, const GroupElt& a) const {
    GroupElt r(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        std::int64_t v = (a[i] % factors_[i]) * (k % factors_[i]) % factors_[i];
        if (v < 0) v += factors_[i];
        r[i] = v;
    }
    return r;
}

std::int64_t FinAbGroup::order_of(const GroupElt& a) const {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        o = std::lcm(o, factors_[i] / std::gcd(factors_[i], a[i]));
    return o;
}

std::vector<GroupElt> FinAbGroup::elements() const {
    std::vector<GroupElt> out;
    out.reserve(static_cast<std::size_t>(order_));
    GroupElt cur = zero();
    for (std::int64_t i = 0; i < order_; ++i) {
        out.push_back(cur);
        for (std::size_t j = factors_.size(); j-- > 0;) {
            if (++cur[j] < factors_[j]) break;
            cur[j] = 0;
        }
    }
    return out;
}

std::int64_t FinAbGroup::index_of(const GroupElt& a) const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + a[i];
    return idx;
}

GroupElt FinAbGroup::element_at(std::int64_t idx) const {
    GroupElt a(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        a[i] = idx % factors_[i];
        idx /= factors_[i];
    }
    return a;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<GroupElt> closure(const FinAbGroup& g, const std::vector<GroupElt>& gens) {
    std::set<GroupElt> seen;
    seen.insert(g.zero());
    std::vector<GroupElt> work{g.zero()};
    while (!work.empty()) {
        const GroupElt cur = work.back();
        work.pop_back();
        for (const auto& gen : gens) {
            GroupElt nxt = g.add(cur, gen);
            if (seen.insert(nxt).second) work.push_back(std::move(nxt));
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace

Subgroup Subgroup::generated(const FinAbGroup& parent, std::vector<GroupElt> gens) {
    for (const auto& x : gens) parent.require(x);
    auto elems = closure(parent, gens);
    return Subgroup(parent, std::move(elems), std::move(gens));
}

Subgroup Subgroup::trivial(const FinAbGroup& parent) {
    return Subgroup(parent, {parent.zero()}, {});
}

bool Subgroup::contains(const GroupElt& a) const {
    return std::binary_search(elements_.begin(), elements_.end(), a);
}

std::vector<Subgroup> all_subgroups_of_order(const FinAbGroup& g, std::int64_t m,
                                             std::int64_t max_order) {
    if (g.order() > max_order)
        throw ResourceLimitError("subgroup enumeration: group exceeds the element bound");
    if (m <= 0 || g.order() % m != 0) return {};

    const auto all = g.elements();

    // BFS over the part of the subgroup lattice whose orders divide m; every
    // order-m subgroup is reached by adding one generator at a time (each
    // intermediate order divides m by Lagrange).
    std::set<std::vector<GroupElt>> seen;
    std::vector<std::pair<std::vector<GroupElt>, std::vector<GroupElt>>> work; // elements, gens
    std::vector<Subgroup> found;

    const std::vector<GroupElt> triv{g.zero()};
    seen.insert(triv);
    work.emplace_back(triv, std::vector<GroupElt>{});
    if (m == 1) return {Subgroup::trivial(g)};

    while (!work.empty()) {
        auto [elems, gens] = std::move(work.back());
        work.pop_back();
        for (const auto& x : all) {
            if (std::binary_search(elems.begin(), elems.end(), x)) continue;
            auto next_gens = gens;
            next_gens.push_back(x);
            auto ext = closure(g, next_gens);
            const auto size = static_cast<std::int64_t>(ext.size());
            if (size > m || m % size != 0) continue;
            if (!seen.insert(ext).second) continue;
            if (size == m)
                found.push_back(Subgroup::generated(g, next_gens));
            else
                work.emplace_back(std::move(ext), std::move(next_gens));
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

std::vector<Subgroup> all_subgroups(const FinAbGroup& g, std::int64_t max_order) {
    std::vector<Subgroup> out;
    for (std::int64_t m = 1; m <= g.order(); ++m) {
        if (g.order() % m != 0) continue;
        auto part = all_subgroups_of_order(g, m, max_order);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t order_by_add(const GroupElt& x,
                          const std::function<GroupElt(const GroupElt&, const GroupElt&)>& add,
                          const GroupElt& zero) {
    std::int64_t o = 1;
    GroupElt cur = x;
    while (cur != zero) {
        cur = add(cur, x);
        ++o;
    }
    return o;
}

/// Invariant factors from the counts #{x : d*x = 0}: per prime, the partition
/// is recovered from s_k = log_p #{x : p^k x = 0}.
std::vector<std::int64_t> factors_from_orders(const std::vector<std::int64_t>& orders) {
    const std::int64_t n = static_cast<std::int64_t>(orders.size());
    std::int64_t expo = 1;
    for (const auto o : orders) expo = std::lcm(expo, o);

    std::map<std::int64_t, std::vector<std::int64_t>> primary; // p -> prime powers desc
    for (std::int64_t p = 2; p <= expo; ++p) {
        if (expo % p != 0) continue;
        while (expo % p == 0) expo /= p;
        std::vector<std::int64_t> s; // s[k] = log_p count of order dividing p^(k+1)
        std::int64_t pk = p;
        while (true) {
            std::int64_t count = 0;
            for (const auto o : orders)
                if (pk % o == 0 || std::gcd(o, pk) == o) ++count;
            std::int64_t log = 0, c = count;
            while (c > 1) { c /= p; ++log; }
            s.push_back(log);
            if (!s.empty() && s.size() > 1 && s[s.size() - 1] == s[s.size() - 2]) {
                s.pop_back();
                break;
            }
            pk *= p;
        }
        // conjugate partition: number of parts >= k is s[k-1] - s[k-2]
        std::vector<std::int64_t> parts;
        for (std::size_t k = 0; k < s.size(); ++k) {
            const std::int64_t cnt = s[k] - (k == 0 ? 0 : s[k - 1]);
            for (std::int64_t i = 0; i < cnt; ++i) {
                // element at rank i gains one more factor p at level k+1
            }
            parts.push_back(cnt);
        }
        // parts[k] = number of cyclic p-power factors of order >= p^(k+1)
        std::vector<std::int64_t> powers;
        if (!parts.empty()) {
            const std::int64_t num_factors = parts[0];
            for (std::int64_t i = 0; i < num_factors; ++i) {
                std::int64_t e = 0;
                for (std::size_t k = 0; k < parts.size(); ++k)
                    if (parts[k] > i) e = static_cast<std::int64_t>(k) + 1;
                std::int64_t q = 1;
                for (std::int64_t t = 0; t < e; ++t) q *= p;
                powers.push_back(q);
            }
        }
        std::sort(powers.rbegin(), powers.rend());
        primary[p] = std::move(powers);
    }

    std::size_t ranks = 0;
    for (const auto& [p, powers] : primary) ranks = std::max(ranks, powers.size());
    std::vector<std::int64_t> invariant(ranks, 1);
    for (const auto& [p, powers] : primary)
        for (std::size_t i = 0; i < powers.size(); ++i) invariant[i] *= powers[i];
    std::reverse(invariant.begin(), invariant.end()); // ascending divisibility
    return invariant;
}

} // namespace

AbelianStructure decompose_abelian(
    const std::vector<GroupElt>& elements,
    const std::function<GroupElt(const GroupElt&, const GroupElt&)>& add,
    const GroupElt& zero) {
    AbelianStructure out;
    if (elements.empty()) throw InvalidInputError("decompose_abelian: empty element set");

    std::map<GroupElt, std::int64_t> order_of;
    std::vector<std::int64_t> orders;
    orders.reserve(elements.size());
    for (const auto& x : elements) {
        const auto o = order_by_add(x, add, zero);
        order_of[x] = o;
        orders.push_back(o);
    }
    out.factors = factors_from_orders(orders);

    const std::int64_t total = static_cast<std::int64_t>(elements.size());
    {
        std::int64_t check = 1;
        for (const auto f : out.factors) check *= f;
        if (check != total)
            throw InternalConsistencyError("decompose_abelian: factor product mismatch");
    }

    // Greedy basis search with backtracking, largest invariant factor first.
    std::vector<std::int64_t> desc(out.factors.rbegin(), out.factors.rend());
    std::vector<GroupElt> basis;

    const auto span_of = [&](const std::vector<GroupElt>& gens) {
        std::set<GroupElt> seen{zero};
        std::vector<GroupElt> work{zero};
        while (!work.empty()) {
            GroupElt cur = work.back();
            work.pop_back();
            for (const auto& g : gens) {
                GroupElt nxt = add(cur, g);
                if (seen.insert(nxt).second) work.push_back(nxt);
            }
        }
        return seen;
    };

    std::function<bool(std::size_t, std::set<GroupElt>&)> search =
        [&](std::size_t level, std::set<GroupElt>& spanned) -> bool {
        if (level == desc.size()) return true;
        const std::int64_t want = desc[level];
        std::int64_t spanned_order = static_cast<std::int64_t>(spanned.size());
        for (const auto& x : elements) {
            if (order_of[x] != want) continue;
            if (spanned.count(x)) continue;
            basis.push_back(x);
            auto bigger = span_of(basis);
            if (static_cast<std::int64_t>(bigger.size()) == spanned_order * want) {
                if (search(level + 1, bigger)) return true;
            }
            basis.pop_back();
        }
        return false;
    };

    std::set<GroupElt> start{zero};
    if (!search(0, start))
        throw InternalConsistencyError("decompose_abelian: no basis found");

    std::reverse(basis.begin(), basis.end()); // align with ascending factors
    out.basis = basis;

    // Coordinates: expand every combination once.
    const std::size_t r = out.factors.size();
    GroupElt coords(r, 0);
    GroupElt acc = zero;
    std::vector<GroupElt> partial(r + 1, zero);
    std::function<void(std::size_t)> expand = [&](std::size_t i) {
        if (i == r) {
            if (!out.coords.emplace(partial[r], coords).second)
                throw InternalConsistencyError("decompose_abelian: basis not independent");
            return;
        }
        GroupElt cur = partial[i];
        for (std::int64_t c = 0; c < out.factors[i]; ++c) {
            coords[i] = c;
            partial[i + 1] = cur;
            expand(i + 1);
            cur = add(cur, out.basis[i]);
        }
    };
    expand(0);
    if (out.coords.size() != elements.size())
        throw InternalConsistencyError("decompose_abelian: coordinate map incomplete");
    return out;
}

// ---------------------------------------------------------------------------

Quotient::Quotient(const FinAbGroup& g, const Subgroup& h) : parent_(g), group_({}) {
    if (h.parent() != g) throw InvalidInputError("quotient: subgroup of a different group");
    // Closure sanity: H must contain 0 and be closed (guaranteed by Subgroup,
    // but inputs assembled by hand go through here too).
    for (const auto& x : h.generators())
        if (!h.contains(x)) throw InvalidInputError("quotient: subgroup not closed");

    const auto all = g.elements();
    for (const auto& a : all) {
        if (rep_.count(a)) continue;
        GroupElt best = a;
        std::vector<GroupElt> coset;
        for (const auto& hh : h.elements()) {
            GroupElt c = g.add(a, hh);
            if (c < best) best = c;
            coset.push_back(std::move(c));
        }
        for (auto& c : coset) rep_.emplace(std::move(c), best);
    }

    std::vector<GroupElt> reps;
    for (const auto& [elt, rep] : rep_)
        if (elt == rep) reps.push_back(rep);

    const auto add_reps = [this](const GroupElt& a, const GroupElt& b) {
        return rep_.at(parent_.add(a, b));
    };
    auto structure = decompose_abelian(reps, add_reps, rep_.at(g.zero()));
    group_ = FinAbGroup(structure.factors);
    rep_coords_ = std::move(structure.coords);
    rep_basis_ = std::move(structure.basis);
}

GroupElt Quotient::rep_of(const GroupElt& a) const {
    parent_.require(a);
    return rep_.at(a);
}

GroupElt Quotient::project(const GroupElt& a) const { return rep_coords_.at(rep_of(a)); }

GroupElt Quotient::lift(const GroupElt& q) const {
    group_.require(q);
    GroupElt acc = parent_.zero();
    for (std::size_t i = 0; i < rep_basis_.size(); ++i)
        acc = parent_.add(acc, parent_.scaled(q[i], rep_basis_[i]));
    return rep_.at(acc);
}

Quotient canonicalize(const FinAbGroup& g) { return Quotient(g, Subgroup::trivial(g)); }

QmodZ dual_character(const FinAbGroup& g, const GroupElt& chi, const GroupElt& x) {
    g.require(chi);
    g.require(x);
    QmodZ v;
    for (std::size_t i = 0; i < g.factors().size(); ++i)
        v += QmodZ(chi[i] * x[i], g.factors()[i]);
    return v;
}

} // namespace anomalia
