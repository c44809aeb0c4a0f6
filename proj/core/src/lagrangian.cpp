#include "anomalia/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace anomalia {

LagrangianExtension::LagrangianExtension(MetricGroup metric, GroupElt iota_gen, GroupElt lift)
    : metric_(std::move(metric)),
      iota_gen_(std::move(iota_gen)),
      lift_(std::move(lift)),
      lagrangian_(Subgroup::generated(metric_.group(), {iota_gen_})) {
    const auto& g = metric_.group();
    g.require(iota_gen_);
    g.require(lift_);

    n_ = lagrangian_.order();
    if (n_ * n_ != g.order())
        throw InvalidInputError("LagrangianExtension: |A| != n^2 for n = |iota image|");
    for (const auto& x : lagrangian_.elements())
        if (!metric_.q(x).is_zero())
            throw InvalidInputError("LagrangianExtension: iota image is not isotropic");
    if (orthogonal_complement(metric_, lagrangian_) != lagrangian_)
        throw InvalidInputError("LagrangianExtension: iota image is not Lagrangian");

    // The lift must generate the quotient: k*lift lands in L first at k = n.
    GroupElt cur = lift_;
    std::int64_t coset_order = 1;
    while (!lagrangian_.contains(cur)) {
        cur = g.add(cur, lift_);
        ++coset_order;
    }
    if (coset_order != n_)
        throw InvalidInputError("LagrangianExtension: lift does not generate the quotient");

    const QmodZ scaled = metric_.q(lift_).scaled(n_ * n_);
    if (!scaled.is_zero())
        throw InvalidInputError("LagrangianExtension: n^2 q(lift) is not integral");
    // n^2 q(lift) as an integer: scale the representative before reduction.
    const QmodZ qv = metric_.q(lift_);
    anomaly_index_ = (qv.num() * ((n_ * n_) / qv.den())) % n_;
}

std::int64_t LagrangianExtension::degree(const GroupElt& x) const {
    const auto& g = metric_.group();
    g.require(x);
    GroupElt cur = x;
    const GroupElt step = g.neg(lift_);
    for (std::int64_t d = 0; d < n_; ++d) {
        if (lagrangian_.contains(cur)) return d;
        cur = g.add(cur, step);
    }
    throw InternalConsistencyError("LagrangianExtension: element has no degree");
}

std::int64_t LagrangianExtension::pairing_degree(const GroupElt& x) const {
    const QmodZ v = metric_.b(x, iota_gen_); // = deg(x)/n
    if (v.is_zero()) return 0;
    if (n_ % v.den() != 0)
        throw InternalConsistencyError("LagrangianExtension: pairing value outside (1/n)Z");
    return v.num() * (n_ / v.den()) % n_;
}

// ---------------------------------------------------------------------------

LagrangianExtension standard_extension(std::int64_t n) {
    if (n < 1) throw InvalidInputError("standard_extension: n must be positive");
    FinAbGroup g({n, n});
    std::vector<QmodZ> diag{QmodZ::zero(), QmodZ::zero()};
    std::vector<std::vector<QmodZ>> pairing{{QmodZ::zero(), QmodZ(1, n)},
                                            {QmodZ(1, n), QmodZ::zero()}};
    MetricGroup m(QuadraticForm(std::move(g), std::move(diag), std::move(pairing)));
    GroupElt iota{n == 1 ? 0 : 1, 0};
    GroupElt lift{0, n == 1 ? 0 : 1};
    return LagrangianExtension(std::move(m), std::move(iota), std::move(lift));
}

namespace {

/// Pairs (a, b) in [0,n)^2 with the carry law used by the twisted double.
struct CarryGroup {
    std::int64_t n;
    std::int64_t t; // carry coefficient

    GroupElt add(const GroupElt& x, const GroupElt& y) const {
        const std::int64_t a = x[0] + y[0];
        const std::int64_t carry = a / n;
        return {a % n, (((x[1] + y[1] + t * carry) % n) + n) % n};
    }
    GroupElt zero() const { return {0, 0}; }
    std::vector<GroupElt> elements() const {
        std::vector<GroupElt> out;
        out.reserve(static_cast<std::size_t>(n * n));
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b) out.push_back({a, b});
        return out;
    }
};

} // namespace

LagrangianExtension twisted_double_cyclic(std::int64_t n, std::int64_t j) {
    if (n < 1) throw InvalidInputError("twisted_double_cyclic: n must be positive");
    j = ((j % n) + n) % n;

    // dq carries no floor terms exactly when the carry coefficient is 2j.
    const CarryGroup carry{n, (2 * j) % n};
    const auto q_carry = [&](const GroupElt& x) {
        return QmodZ(x[0] * x[1], n) + QmodZ(j * x[0] * x[0], n * n);
    };

    const auto elems = carry.elements();
    auto structure = decompose_abelian(
        elems, [&](const GroupElt& a, const GroupElt& b) { return carry.add(a, b); },
        carry.zero());

    FinAbGroup g(structure.factors);
    const std::size_t r = structure.factors.size();
    std::vector<QmodZ> diag(r);
    std::vector<std::vector<QmodZ>> pairing(r, std::vector<QmodZ>(r));
    for (std::size_t i = 0; i < r; ++i) {
        diag[i] = q_carry(structure.basis[i]);
        for (std::size_t k = 0; k < r; ++k) {
            const auto sum = carry.add(structure.basis[i], structure.basis[k]);
            pairing[i][k] = q_carry(sum) - q_carry(structure.basis[i]) - q_carry(structure.basis[k]);
        }
    }

    std::optional<MetricGroup> metric;
    try {
        QuadraticForm form(g, diag, pairing);
        // The generator presentation must reproduce q on every element.
        for (const auto& x : elems)
            if (form.eval(structure.coords.at(x)) != q_carry(x))
                throw InvalidInputError("presentation mismatch");
        metric.emplace(std::move(form));
    } catch (const InvalidInputError& err) {
        throw InternalConsistencyError(std::string("twisted_double_cyclic: validation failed: ") +
                                       err.what());
    }
    GroupElt iota = structure.coords.at(GroupElt{0, n == 1 ? 0 : 1});
    GroupElt lift = structure.coords.at(GroupElt{n == 1 ? 0 : 1, 0});
    LagrangianExtension e(std::move(*metric), std::move(iota), std::move(lift));
    if (e.anomaly_index() != j)
        throw InternalConsistencyError("twisted_double_cyclic: anomaly index mismatch");
    return e;
}

LagrangianExtension order3_extension(std::int64_t m, int sign) {
    if (m < 1) throw InvalidInputError("order3_extension: m must be positive");
    if (sign != 1 && sign != -1) throw InvalidInputError("order3_extension: sign must be +-1");
    const std::int64_t n = 3 * m;
    if (m % 2 == 0) {
        // The diagonal presentation on Z_{9m} + Z_m is degenerate for even m;
        // the class itself survives as the twisted double of the same index.
        const std::int64_t j = sign == 1 ? m : n - m;
        return twisted_double_cyclic(n, j);
    }
    FinAbGroup g({9 * m, m});
    std::vector<QmodZ> diag{QmodZ(sign, 9 * m), QmodZ(-sign, m)};
    MetricGroup metric(QuadraticForm::diagonal(std::move(g), std::move(diag)));
    GroupElt iota{9 * m - 3, m == 1 ? 0 : 1};
    GroupElt lift{1, 0};
    return LagrangianExtension(std::move(metric), std::move(iota), std::move(lift));
}

std::vector<Subgroup> enumerate_lagrangians(const MetricGroup& m, std::int64_t max_order) {
    const std::int64_t order = m.group().order();
    std::int64_t root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(order))));
    while (root * root < order) ++root;
    while (root * root > order) --root;
    if (root * root != order) return {};

    std::vector<Subgroup> out;
    for (auto& h : all_subgroups_of_order(m.group(), root, max_order)) {
        bool isotropic = true;
        for (const auto& x : h.elements())
            if (!m.q(x).is_zero()) { isotropic = false; break; }
        if (!isotropic) continue;
        if (orthogonal_complement(m, h) != h) continue;
        out.push_back(std::move(h));
    }
    return out;
}

LagrangianExtension boxplus(const LagrangianExtension& e1, const LagrangianExtension& e2) {
    if (e1.n() != e2.n())
        throw InvalidInputError("boxplus: extensions of different dual groups");
    const std::int64_t n = e1.n();

    const QuadraticForm sum = direct_sum(e1.metric().form(), e2.metric().form());
    const auto& sg = sum.group();

    const auto concat = [&](const GroupElt& a, const GroupElt& b) {
        GroupElt out = a;
        out.insert(out.end(), b.begin(), b.end());
        return out;
    };

    // Antidiagonal D and its orthogonal complement inside the direct sum.
    const GroupElt d_gen = concat(e1.iota_generator(), e2.group().neg(e2.iota_generator()));
    const Subgroup d = Subgroup::generated(sg, {d_gen});

    std::vector<GroupElt> dperp;
    for (const auto& x : sg.elements())
        if (sum.bilinear(x, d_gen).is_zero()) dperp.push_back(x);

    // Cosets of D inside D^perp, represented by their lexicographic minimum.
    std::map<GroupElt, GroupElt> rep;
    for (const auto& x : dperp) {
        if (rep.count(x)) continue;
        GroupElt best = x;
        std::vector<GroupElt> coset;
        for (const auto& dd : d.elements()) {
            GroupElt c = sg.add(x, dd);
            if (c < best) best = c;
            coset.push_back(std::move(c));
        }
        for (auto& c : coset) rep.emplace(std::move(c), best);
    }
    std::vector<GroupElt> reps;
    for (const auto& [elt, rr] : rep)
        if (elt == rr) reps.push_back(rr);

    // q descends to the quotient because D pairs trivially with D^perp.
    for (const auto& rr : reps)
        for (const auto& dd : d.elements())
            if (sum.eval(sg.add(rr, dd)) != sum.eval(rr))
                throw InternalConsistencyError("boxplus: q not constant on cosets");

    const auto add_reps = [&](const GroupElt& a, const GroupElt& b) {
        return rep.at(sg.add(a, b));
    };
    auto structure = decompose_abelian(reps, add_reps, rep.at(sg.zero()));

    FinAbGroup qg(structure.factors);
    const std::size_t r = structure.factors.size();
    std::vector<QmodZ> diag(r);
    std::vector<std::vector<QmodZ>> pairing(r, std::vector<QmodZ>(r));
    for (std::size_t i = 0; i < r; ++i) {
        diag[i] = sum.eval(structure.basis[i]);
        for (std::size_t k = 0; k < r; ++k)
            pairing[i][k] = sum.eval(sg.add(structure.basis[i], structure.basis[k])) -
                            sum.eval(structure.basis[i]) - sum.eval(structure.basis[k]);
    }
    QuadraticForm qform(qg, diag, pairing);
    for (const auto& rr : reps)
        if (qform.eval(structure.coords.at(rr)) != sum.eval(rr))
            throw InternalConsistencyError("boxplus: quotient form mismatch");

    MetricGroup metric(std::move(qform));
    const GroupElt iota = structure.coords.at(rep.at(concat(e1.iota_generator(), e2.group().zero())));

    // Canonical lift: lexicographically least element pairing to 1/n with iota.
    std::optional<GroupElt> lift;
    const QmodZ want = n == 1 ? QmodZ::zero() : QmodZ(1, n);
    for (const auto& y : metric.group().elements()) {
        if (metric.b(y, iota) == want) { lift = y; break; }
    }
    if (!lift) throw InternalConsistencyError("boxplus: no unit-degree lift found");
    return LagrangianExtension(std::move(metric), iota, *lift);
}

std::int64_t anomaly_index(const LagrangianExtension& e) { return e.anomaly_index(); }

std::optional<MetricIso> trivialize(const LagrangianExtension& e) {
    const auto& g = e.group();
    const std::int64_t n = e.n();

    // A q-null lift of a quotient generator, lexicographically first.
    std::optional<GroupElt> found;
    std::int64_t unit = 1;
    for (const auto& x : g.elements()) {
        if (!e.metric().q(x).is_zero()) continue;
        const std::int64_t d = e.degree(x);
        if (std::gcd(d, n) != 1) continue;
        found = x;
        unit = e.pairing_degree(x); // dq(x, iota(1)) = unit/n, a unit mod n
        break;
    }
    if (!found) return std::nullopt;
    const GroupElt& x = *found;

    const LagrangianExtension target = standard_extension(n);

    // iota(s) + l*x  |->  (s, l*unit): solve for each generator of the source.
    std::map<GroupElt, std::pair<std::int64_t, std::int64_t>> split; // elt -> (s, l)
    for (std::int64_t l = 0; l < n; ++l) {
        const GroupElt lx = g.scaled(l, x);
        for (std::int64_t s = 0; s < n; ++s) {
            GroupElt elt = g.add(g.scaled(s, e.iota_generator()), lx);
            split.emplace(std::move(elt), std::make_pair(s, l));
        }
    }
    if (static_cast<std::int64_t>(split.size()) != g.order())
        return std::nullopt; // x does not split the extension

    std::vector<GroupElt> images;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        GroupElt ei = g.zero();
        ei[i] = g.factors()[i] == 1 ? 0 : 1;
        const auto [s, l] = split.at(ei);
        images.push_back(GroupElt{s % n, (l * unit) % n});
    }
    MetricIso iso{e.metric(), target.metric(), std::move(images)};
    if (!iso.verify())
        throw InternalConsistencyError("trivialize: constructed map is not an isometry");
    return iso;
}

std::optional<MetricIso> lex_isomorphism(const LagrangianExtension& e1,
                                         const LagrangianExtension& e2) {
    if (e1.n() != e2.n()) return std::nullopt;
    return find_isomorphism(e1.metric(), e2.metric(),
                            {{e1.iota_generator(), e2.iota_generator()}});
}

// ---------------------------------------------------------------------------

Cocycle3::Cocycle3(FinAbGroup group, std::vector<QmodZ> table)
    : group_(std::move(group)), table_(std::move(table)) {
    const std::int64_t n = group_.order();
    if (static_cast<std::int64_t>(table_.size()) != n * n * n)
        throw InvalidInputError("Cocycle3: table size mismatch");
    if (n * n * n * n > 100000000)
        throw ResourceLimitError("Cocycle3: group too large to validate");

    const auto elems = group_.elements();
    const auto at = [&](std::int64_t a, std::int64_t b, std::int64_t c) {
        return table_[(a * n + b) * n + c];
    };
    std::vector<std::vector<std::int64_t>> sum(n, std::vector<std::int64_t>(n));
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
            sum[a][b] = group_.index_of(group_.add(elems[a], elems[b]));

    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
            for (std::int64_t c = 0; c < n; ++c)
                for (std::int64_t dd = 0; dd < n; ++dd) {
                    const QmodZ v = at(b, c, dd) - at(sum[a][b], c, dd) + at(a, sum[b][c], dd) -
                                    at(a, b, sum[c][dd]) + at(a, b, c);
                    if (!v.is_zero())
                        throw InvalidInputError("Cocycle3: cocycle identity fails");
                }
}

QmodZ Cocycle3::operator()(const GroupElt& a, const GroupElt& b, const GroupElt& c) const {
    const std::int64_t n = group_.order();
    return table_[(group_.index_of(a) * n + group_.index_of(b)) * n + group_.index_of(c)];
}

Cocycle3 Cocycle3::operator+(const Cocycle3& o) const {
    if (group_ != o.group_) throw InvalidInputError("Cocycle3: mismatched groups");
    std::vector<QmodZ> table(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) table[i] = table_[i] + o.table_[i];
    return Cocycle3(group_, std::move(table));
}

Cocycle3 standard_cocycle(std::int64_t n, std::int64_t j) {
    if (n < 1) throw InvalidInputError("standard_cocycle: n must be positive");
    j = ((j % n) + n) % n;
    FinAbGroup g({n});
    std::vector<QmodZ> table(static_cast<std::size_t>(n) * n * n);
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
            for (std::int64_t c = 0; c < n; ++c)
                table[(a * n + b) * n + c] = QmodZ(j * a * ((b + c) / n), n);
    return Cocycle3(std::move(g), std::move(table));
}

QmodZ psi_star(const Cocycle3& w, const GroupElt& x, const GroupElt& y, const GroupElt& z) {
    QmodZ v;
    v += w(x, y, z);
    v -= w(x, z, y);
    v -= w(y, x, z);
    v += w(y, z, x);
    v += w(z, x, y);
    v -= w(z, y, x);
    return v;
}

bool is_abelian_class(const Cocycle3& w) {
    const auto elems = w.group().elements();
    for (const auto& x : elems)
        for (const auto& y : elems)
            for (const auto& z : elems)
                if (!psi_star(w, x, y, z).is_zero()) return false;
    return true;
}

} // namespace anomalia
