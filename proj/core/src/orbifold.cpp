#include "anomalia/orbifold.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace anomalia {

std::vector<QmodZ> twisted_sector_spectrum(CentralCharge c, std::int64_t n) {
    if (n < 1) throw InvalidInputError("twisted_sector_spectrum: n must be positive");
    std::vector<QmodZ> h;
    h.reserve(static_cast<std::size_t>(n));
    const QmodZ offset((n * n - 1) * c.c(), 24 * n);
    for (std::int64_t i = 0; i < n; ++i) h.push_back(QmodZ(i, n) + offset);
    return h;
}

bool is_non_anomalous(CentralCharge c, std::int64_t n) {
    if (n < 1) throw InvalidInputError("is_non_anomalous: n must be positive");
    return n % 3 != 0 || c.c() % 24 == 0;
}

LagrangianExtension orbifold_metric_group(CentralCharge c, std::int64_t n) {
    if (n < 1) throw InvalidInputError("orbifold_metric_group: n must be positive");
    if (is_non_anomalous(c, n)) return standard_extension(n);
    const std::int64_t m = n / 3;
    // k = +1 mod 3 pairs with the minus form, k = -1 with the plus form.
    return order3_extension(m, c.k() % 3 == 1 ? -1 : +1);
}

bool graded_spectrum_check(const LagrangianExtension& e, CentralCharge c, std::int64_t n) {
    if (e.n() != n) return false;
    std::map<std::int64_t, std::vector<QmodZ>> by_degree;
    for (const auto& x : e.group().elements()) by_degree[e.degree(x)].push_back(e.metric().q(x));

    for (std::int64_t d = 0; d < n; ++d) {
        const std::int64_t g = std::gcd(d, n);
        const std::int64_t l = n / g;
        std::vector<QmodZ> expect;
        const QmodZ offset((n * n - g * g) * c.c(), 24 * n);
        for (std::int64_t i = 0; i < l; ++i)
            for (std::int64_t copy = 0; copy < g; ++copy) expect.push_back(QmodZ(i, l) + offset);
        std::sort(expect.begin(), expect.end());

        auto got = by_degree[d];
        std::sort(got.begin(), got.end());
        if (got != expect) return false;
    }
    return true;
}

bool s3_order3_anomalous(CentralCharge c) { return !is_non_anomalous(c, 3); }

OrbifoldReport orbifold_report(CentralCharge c, std::int64_t n) {
    auto rep = orbifold_metric_group(c, n);
    const auto spectrum = twisted_sector_spectrum(c, n);
    const bool anomalous = !is_non_anomalous(c, n);
    OrbifoldReport report{n,       c.c(),     c.k(),          spectrum,
                          anomalous, rep.anomaly_index(), std::move(rep), std::nullopt};
    report.dual_lagrangian = twisted_orbifold_partner(report);
    return report;
}

std::optional<Subgroup> twisted_orbifold_partner(const OrbifoldReport& report) {
    if (report.anomalous) return std::nullopt;
    const auto& e = report.rep_category;
    // A q-null transversal: the cyclic group on a null lift of a generator.
    for (const auto& x : e.group().elements()) {
        if (!e.metric().q(x).is_zero()) continue;
        if (std::gcd(e.degree(x), e.n()) != 1) continue;
        return Subgroup::generated(e.group(), {x});
    }
    return std::nullopt;
}

std::vector<std::pair<std::int64_t, MetricGroup>> z3_table() {
    std::vector<std::pair<std::int64_t, MetricGroup>> rows;
    {
        FinAbGroup g({3, 3});
        std::vector<QmodZ> diag{QmodZ::zero(), QmodZ::zero()};
        std::vector<std::vector<QmodZ>> pairing{{QmodZ::zero(), QmodZ(1, 3)},
                                                {QmodZ(1, 3), QmodZ::zero()}};
        rows.emplace_back(0, MetricGroup(QuadraticForm(std::move(g), std::move(diag),
                                                       std::move(pairing))));
    }
    rows.emplace_back(1, MetricGroup(QuadraticForm::diagonal(FinAbGroup({9}), {QmodZ(4, 9)})));
    rows.emplace_back(2, MetricGroup(QuadraticForm::diagonal(FinAbGroup({9}), {QmodZ(8, 9)})));
    return rows;
}

} // namespace anomalia
