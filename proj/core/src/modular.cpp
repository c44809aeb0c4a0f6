#include "anomalia/modular.hpp"

#include <cmath>
#include <numbers>

namespace anomalia {

namespace {

std::complex<double> unit_phase(const QmodZ& v) {
    return std::polar(1.0, 2.0 * std::numbers::pi * v.value());
}

} // namespace

ModularData modular_data(const MetricGroup& m) {
    const auto& g = m.group();
    const auto labels = g.elements();
    const auto n = static_cast<Eigen::Index>(labels.size());
    const double root = std::sqrt(static_cast<double>(g.order()));

    ModularData md;
    md.labels = labels;
    md.T.resize(n);
    md.S.resize(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        md.T(a) = unit_phase(m.q(labels[a]));
        for (Eigen::Index b = a; b < n; ++b) {
            const auto v = unit_phase(-m.b(labels[a], labels[b])) / root;
            md.S(a, b) = v;
            md.S(b, a) = v;
        }
    }
    md.sigma = gauss_signature(m);
    return md;
}

double unitarity_residual(const ModularData& md) {
    const auto n = md.S.rows();
    Eigen::MatrixXcd prod = md.S * md.S.adjoint();
    prod -= Eigen::MatrixXcd::Identity(n, n);
    return prod.cwiseAbs().maxCoeff();
}

double charge_conjugation_residual(const ModularData& md, const FinAbGroup& g) {
    const auto n = md.S.rows();
    Eigen::MatrixXcd s2 = md.S * md.S;
    double worst = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto minus = g.index_of(g.neg(md.labels[a]));
        for (Eigen::Index b = 0; b < n; ++b) {
            const double expect = b == minus ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(s2(a, b) - expect));
        }
    }
    return worst;
}

double modular_relation_residual(const ModularData& md) {
    const auto n = md.S.rows();
    Eigen::MatrixXcd st = md.S * md.T.asDiagonal();
    Eigen::MatrixXcd st3 = st * st * st;
    Eigen::MatrixXcd s2 = md.S * md.S;
    const auto phase = std::polar(1.0, 2.0 * std::numbers::pi * md.sigma / 8.0);
    return (st3 - phase * s2).cwiseAbs().maxCoeff();
}

std::vector<std::vector<std::vector<long>>> verlinde_fusion(const ModularData& md, double tol) {
    const auto n = md.S.rows();
    if (n > 128)
        throw ResourceLimitError("verlinde_fusion: tensor too large; use the streaming check");
    std::vector tensor(n, std::vector(n, std::vector<long>(n, 0)));
    Eigen::VectorXcd u(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            for (Eigen::Index x = 0; x < n; ++x)
                u(x) = md.S(a, x) * md.S(b, x) / md.S(0, x);
            Eigen::VectorXcd row = md.S.conjugate() * u;
            for (Eigen::Index c = 0; c < n; ++c) {
                const double re = row(c).real();
                const long rounded = std::lround(re);
                if (std::abs(re - rounded) > tol || std::abs(row(c).imag()) > tol)
                    throw ModularityError("verlinde_fusion: rounding residue above tolerance");
                tensor[a][b][c] = rounded;
            }
        }
    }
    return tensor;
}

double verlinde_group_law_residual(const ModularData& md, const FinAbGroup& g) {
    const auto n = md.S.rows();
    double worst = 0.0;

    if (g.order() <= 81) {
        Eigen::VectorXcd u(n);
        for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
                for (Eigen::Index x = 0; x < n; ++x)
                    u(x) = md.S(a, x) * md.S(b, x) / md.S(0, x);
                Eigen::VectorXcd row = md.S.conjugate() * u;
                const auto sum = g.index_of(g.add(md.labels[a], md.labels[b]));
                for (Eigen::Index c = 0; c < n; ++c) {
                    const double expect = c == sum ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(row(c) - expect));
                }
            }
        }
        return worst;
    }

    // Certified route: N^(a) = (S D_a) S*. With u = ||S S* - I||_max and
    // r_a = ||S D_a - P_a S||_max, every tensor entry satisfies
    // |N_{ab}^c - delta| <= sqrt(n) r_a + u.
    const double u = unitarity_residual(md);
    double r = 0.0;
    for (Eigen::Index a = 0; a < n; ++a) {
        Eigen::VectorXcd d(n);
        for (Eigen::Index x = 0; x < n; ++x) d(x) = md.S(a, x) / md.S(0, x);
        Eigen::MatrixXcd lhs = md.S * d.asDiagonal();
        // P_a S: row b of the result is row (a+b) of S.
        for (Eigen::Index b = 0; b < n; ++b) {
            const auto ab = g.index_of(g.add(md.labels[a], md.labels[b]));
            r = std::max(r, (lhs.row(b) - md.S.row(ab)).cwiseAbs().maxCoeff());
        }
    }
    return std::sqrt(static_cast<double>(n)) * r * (1.0 + u) + u;
}

std::vector<QmodZ> twist_spectrum(const QuadraticForm& f) { return f.value_multiset(); }

} // namespace anomalia
