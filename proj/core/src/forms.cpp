#include "anomalia/forms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

namespace anomalia {

QuadraticForm::QuadraticForm(FinAbGroup group, std::vector<QmodZ> diag,
                             std::vector<std::vector<QmodZ>> pairing)
    : group_(std::move(group)), diag_(std::move(diag)), pairing_(std::move(pairing)) {
    const auto r = group_.rank();
    if (diag_.size() != r || pairing_.size() != r)
        throw InvalidInputError("QuadraticForm: size mismatch with group rank");
    for (const auto& row : pairing_)
        if (row.size() != r) throw InvalidInputError("QuadraticForm: pairing not square");

    const auto& ds = group_.factors();
    for (std::size_t i = 0; i < r; ++i) {
        if (!diag_[i].scaled(ds[i] * ds[i]).is_zero())
            throw InvalidInputError("QuadraticForm: d_i^2 q(e_i) != 0");
        if (!diag_[i].scaled(2 * ds[i]).is_zero())
            throw InvalidInputError("QuadraticForm: 2 d_i q(e_i) != 0");
        if (pairing_[i][i] != diag_[i].scaled(2))
            throw InvalidInputError("QuadraticForm: pairing diagonal must equal 2 q(e_i)");
        for (std::size_t j = 0; j < r; ++j) {
            if (pairing_[i][j] != pairing_[j][i])
                throw InvalidInputError("QuadraticForm: pairing not symmetric");
            if (!pairing_[i][j].scaled(ds[i]).is_zero())
                throw InvalidInputError("QuadraticForm: d_i b(e_i, e_j) != 0");
        }
    }
}

QuadraticForm QuadraticForm::diagonal(FinAbGroup group, std::vector<QmodZ> diag) {
    const auto r = group.rank();
    std::vector<std::vector<QmodZ>> pairing(r, std::vector<QmodZ>(r));
    for (std::size_t i = 0; i < r; ++i) pairing[i][i] = diag[i].scaled(2);
    return QuadraticForm(std::move(group), std::move(diag), std::move(pairing));
}

QuadraticForm QuadraticForm::zero(FinAbGroup group) {
    std::vector<QmodZ> diag(group.rank());
    return diagonal(std::move(group), std::move(diag));
}

QmodZ QuadraticForm::eval(const GroupElt& a) const {
    group_.require(a);
    QmodZ v;
    for (std::size_t i = 0; i < a.size(); ++i) {
        v += diag_[i].scaled(a[i] * a[i]);
        for (std::size_t j = i + 1; j < a.size(); ++j)
            v += pairing_[i][j].scaled(a[i] * a[j]);
    }
    return v;
}

QmodZ QuadraticForm::bilinear(const GroupElt& a, const GroupElt& b) const {
    group_.require(a);
    group_.require(b);
    QmodZ v;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) v += pairing_[i][j].scaled(a[i] * b[j]);
    return v;
}

Subgroup QuadraticForm::radical() const {
    std::vector<GroupElt> members;
    for (const auto& a : group_.elements()) {
        bool in_radical = true;
        for (std::size_t i = 0; i < group_.rank() && in_radical; ++i) {
            QmodZ v;
            for (std::size_t j = 0; j < group_.rank(); ++j)
                v += pairing_[i][j].scaled(a[j]);
            in_radical = v.is_zero();
        }
        if (in_radical && a != group_.zero()) members.push_back(a);
    }
    return Subgroup::generated(group_, members);
}

bool QuadraticForm::is_nondegenerate() const { return radical().order() == 1; }

std::vector<QmodZ> QuadraticForm::value_multiset() const {
    std::vector<QmodZ> vals;
    vals.reserve(static_cast<std::size_t>(group_.order()));
    for (const auto& a : group_.elements()) vals.push_back(eval(a));
    std::sort(vals.begin(), vals.end());
    return vals;
}

MetricGroup::MetricGroup(QuadraticForm form) : form_(std::move(form)) {
    if (!form_.is_nondegenerate())
        throw InvalidInputError("MetricGroup: bilinear pairing is degenerate");
}

int gauss_signature(const QuadraticForm& f) {
    if (!f.is_nondegenerate())
        throw InvalidInputError("gauss_signature: degenerate form");
    std::map<QmodZ, std::int64_t> multiset;
    for (const auto& a : f.group().elements()) ++multiset[f.eval(a)];

    std::complex<double> z;
    for (const auto& [v, count] : multiset)
        z += static_cast<double>(count) *
             std::polar(1.0, 2.0 * std::numbers::pi * v.value());

    const double root = std::sqrt(static_cast<double>(f.group().order()));
    if (std::abs(z) < 0.5 * root)
        throw DegenerateSumError("gauss_signature: vanishing Gauss sum");
    const std::complex<double> phase = z / root;
    for (int sigma = 0; sigma < 8; ++sigma) {
        const auto expect = std::polar(1.0, 2.0 * std::numbers::pi * sigma / 8.0);
        if (std::abs(phase - expect) <= 1e-6) return sigma;
    }
    throw DegenerateSumError("gauss_signature: phase is not a multiple of 1/8");
}

QuadraticForm direct_sum(const QuadraticForm& f1, const QuadraticForm& f2) {
    std::vector<std::int64_t> factors = f1.group().factors();
    factors.insert(factors.end(), f2.group().factors().begin(), f2.group().factors().end());
    const std::size_t r1 = f1.group().rank(), r2 = f2.group().rank();

    std::vector<QmodZ> diag = f1.diag();
    diag.insert(diag.end(), f2.diag().begin(), f2.diag().end());

    std::vector<std::vector<QmodZ>> pairing(r1 + r2, std::vector<QmodZ>(r1 + r2));
    for (std::size_t i = 0; i < r1; ++i)
        for (std::size_t j = 0; j < r1; ++j) pairing[i][j] = f1.pairing()[i][j];
    for (std::size_t i = 0; i < r2; ++i)
        for (std::size_t j = 0; j < r2; ++j) pairing[r1 + i][r1 + j] = f2.pairing()[i][j];
    return QuadraticForm(FinAbGroup(std::move(factors)), std::move(diag), std::move(pairing));
}

MetricGroup direct_sum(const MetricGroup& m1, const MetricGroup& m2) {
    return MetricGroup(direct_sum(m1.form(), m2.form()));
}

RestrictedForm restrict_form(const QuadraticForm& f, const Subgroup& h) {
    if (h.parent() != f.group())
        throw InvalidInputError("restrict_form: subgroup of a different group");
    const auto& g = f.group();
    auto structure = decompose_abelian(
        h.elements(), [&](const GroupElt& a, const GroupElt& b) { return g.add(a, b); },
        g.zero());

    FinAbGroup sub(structure.factors);
    const std::size_t r = structure.factors.size();
    std::vector<QmodZ> diag(r);
    std::vector<std::vector<QmodZ>> pairing(r, std::vector<QmodZ>(r));
    for (std::size_t i = 0; i < r; ++i) {
        diag[i] = f.eval(structure.basis[i]);
        for (std::size_t j = 0; j < r; ++j)
            pairing[i][j] = f.bilinear(structure.basis[i], structure.basis[j]);
    }
    return RestrictedForm{QuadraticForm(std::move(sub), std::move(diag), std::move(pairing)),
                          structure.basis};
}

Subgroup orthogonal_complement(const MetricGroup& m, const Subgroup& h) {
    if (h.parent() != m.group())
        throw InvalidInputError("orthogonal_complement: subgroup of a different group");
    std::vector<GroupElt> members;
    for (const auto& a : m.group().elements()) {
        bool ok = true;
        for (const auto& gen : h.generators().empty() ? h.elements() : h.generators()) {
            if (!m.b(a, gen).is_zero()) { ok = false; break; }
        }
        if (ok) members.push_back(a);
    }
    return Subgroup::generated(m.group(), members);
}

GroupElt MetricIso::apply(const GroupElt& a) const {
    source.group().require(a);
    GroupElt out = target.group().zero();
    for (std::size_t i = 0; i < a.size(); ++i)
        out = target.group().add(out, target.group().scaled(a[i], images[i]));
    return out;
}

MetricIso MetricIso::inverse() const {
    std::map<GroupElt, GroupElt> back;
    for (const auto& a : source.group().elements()) back[apply(a)] = a;
    std::vector<GroupElt> inv_images;
    const auto& tf = target.group().factors();
    for (std::size_t i = 0; i < tf.size(); ++i) {
        GroupElt e = target.group().zero();
        e[i] = tf[i] == 1 ? 0 : 1;
        inv_images.push_back(back.at(e));
    }
    return MetricIso{target, source, std::move(inv_images)};
}

bool MetricIso::verify() const {
    if (images.size() != source.group().rank()) return false;
    std::map<GroupElt, bool> hit;
    for (const auto& a : source.group().elements()) {
        const auto img = apply(a);
        if (hit.count(img)) return false;
        hit[img] = true;
        if (target.q(img) != source.q(a)) return false;
    }
    return static_cast<std::int64_t>(hit.size()) == target.group().order();
}

namespace {

/// (order, q-value) pairs over all elements, sorted: a cheap iso fingerprint.
std::vector<std::pair<std::int64_t, QmodZ>> order_twist_fingerprint(const MetricGroup& m) {
    std::vector<std::pair<std::int64_t, QmodZ>> fp;
    for (const auto& a : m.group().elements())
        fp.emplace_back(m.group().order_of(a), m.q(a));
    std::sort(fp.begin(), fp.end());
    return fp;
}

} // namespace

std::optional<MetricIso> find_isomorphism(
    const MetricGroup& m1, const MetricGroup& m2,
    const std::vector<std::pair<GroupElt, GroupElt>>& pins) {
    if (m1.group().order() != m2.group().order()) return std::nullopt;
    if (canonicalize(m1.group()).group() != canonicalize(m2.group()).group())
        return std::nullopt;
    if (order_twist_fingerprint(m1) != order_twist_fingerprint(m2)) return std::nullopt;
    if (gauss_signature(m1) != gauss_signature(m2)) return std::nullopt;

    for (const auto& [p, v] : pins) {
        m1.group().require(p);
        m2.group().require(v);
    }

    const auto& src = m1.group();
    const auto& dst = m2.group();
    const auto r = src.rank();

    // Candidates per source generator, ordered by (order, q, element).
    std::vector<std::vector<GroupElt>> candidates(r);
    {
        struct Key {
            std::int64_t order;
            QmodZ q;
            GroupElt e;
        };
        std::vector<Key> keyed;
        for (const auto& x : dst.elements())
            keyed.push_back({dst.order_of(x), m2.q(x), x});
        std::sort(keyed.begin(), keyed.end(), [](const Key& a, const Key& b) {
            if (a.order != b.order) return a.order < b.order;
            if (a.q != b.q) return a.q < b.q;
            return a.e < b.e;
        });
        for (std::size_t i = 0; i < r; ++i) {
            const std::int64_t d = src.factors()[i];
            GroupElt e = src.zero();
            e[i] = d == 1 ? 0 : 1;
            const QmodZ qe = m1.q(e);
            for (const auto& k : keyed)
                if (d % k.order == 0 && k.q == qe) candidates[i].push_back(k.e);
        }
    }

    std::vector<GroupElt> images(r, dst.zero());
    std::vector<std::int64_t> span_order(r + 1, 1);
    std::vector<std::map<GroupElt, bool>> spans(r + 1);
    spans[0][dst.zero()] = true;

    const auto apply_partial = [&](const GroupElt& p) {
        GroupElt out = dst.zero();
        for (std::size_t i = 0; i < r; ++i)
            if (p[i] != 0) out = dst.add(out, dst.scaled(p[i], images[i]));
        return out;
    };

    std::function<bool(std::size_t)> search = [&](std::size_t level) -> bool {
        if (level == r) {
            if (span_order[r] != dst.order()) return false;
            for (const auto& [p, v] : pins)
                if (apply_partial(p) != v) return false;
            return true;
        }
        const std::int64_t d = src.factors()[level];
        GroupElt e = src.zero();
        e[level] = d == 1 ? 0 : 1;
        for (const auto& x : candidates[level]) {
            // pairing constraint against already-fixed generators
            bool ok = true;
            for (std::size_t j = 0; j < level && ok; ++j) {
                GroupElt ej = src.zero();
                ej[j] = src.factors()[j] == 1 ? 0 : 1;
                ok = m2.b(x, images[j]) == m1.b(e, ej);
            }
            if (!ok) continue;

            // independence: extend the spanned subgroup
            std::map<GroupElt, bool> bigger = spans[level];
            std::vector<GroupElt> work;
            for (const auto& [s, _] : spans[level]) work.push_back(s);
            bool independent = true;
            while (!work.empty() && independent) {
                GroupElt cur = work.back();
                work.pop_back();
                GroupElt nxt = dst.add(cur, x);
                if (!bigger.count(nxt)) {
                    bigger[nxt] = true;
                    work.push_back(nxt);
                }
            }
            if (static_cast<std::int64_t>(bigger.size()) != span_order[level] * d) continue;

            // pins checkable early: all coordinates beyond this level vanish
            images[level] = x;
            ok = true;
            for (const auto& [p, v] : pins) {
                bool early = true;
                for (std::size_t j = level + 1; j < r; ++j) early = early && p[j] == 0;
                if (early && apply_partial(p) != v) { ok = false; break; }
            }
            if (!ok) continue;

            spans[level + 1] = std::move(bigger);
            span_order[level + 1] = span_order[level] * d;
            if (search(level + 1)) return true;
        }
        return false;
    };

    if (!search(0)) return std::nullopt;
    return MetricIso{m1, m2, images};
}

} // namespace anomalia
