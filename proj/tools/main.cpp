#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anomalia/json_io.hpp"
#include "anomalia/modular.hpp"
#include "anomalia/orbifold.hpp"

using namespace anomalia;
using ojson = nlohmann::ordered_json;

namespace {

struct Options {
    std::string format = "json";
    std::int64_t max_order = kDefaultMaxOrder;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw InvalidInputError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

struct Sweep {
    std::int64_t k_lo = 0, k_hi = -1, n_lo = 0, n_hi = -1;
    bool active = false;
};

Sweep parse_sweep(const std::string& text) {
    Sweep s;
    if (text.empty()) return s;
    s.active = true;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw InvalidInputError("sweep: expected var=lo..hi");
        const std::string var = part.substr(0, eq);
        std::string range = part.substr(eq + 1);
        std::int64_t lo, hi;
        const auto dots = range.find("..");
        try {
            if (dots == std::string::npos) {
                lo = hi = std::stoll(range);
            } else {
                lo = std::stoll(range.substr(0, dots));
                hi = std::stoll(range.substr(dots + 2));
            }
        } catch (const std::exception&) {
            throw InvalidInputError("sweep: malformed range '" + range + "'");
        }
        if (lo > hi) throw InvalidInputError("sweep: empty range");
        if (var == "k") { s.k_lo = lo; s.k_hi = hi; }
        else if (var == "n") { s.n_lo = lo; s.n_hi = hi; }
        else throw InvalidInputError("sweep: unknown variable '" + var + "' (use k, n)");
    }
    if (s.k_hi < s.k_lo || s.n_hi < s.n_lo)
        throw InvalidInputError("sweep: both k and n ranges are required");
    return s;
}

ojson spectrum_values(const std::vector<QmodZ>& spectrum, bool sort) {
    auto values = spectrum;
    if (sort) std::sort(values.begin(), values.end());
    ojson arr = ojson::array();
    for (const auto& h : values) arr.push_back(h.str());
    return arr;
}

std::string joined_values(const std::vector<QmodZ>& spectrum, bool sort,
                          const std::string& sep = " ") {
    auto values = spectrum;
    if (sort) std::sort(values.begin(), values.end());
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += values[i].str();
    }
    return out;
}

// ---------------------------------------------------------------- anomaly --

int run_anomaly(std::int64_t c_in, std::int64_t n_in, const Sweep& sweep, const Options& opt) {
    std::vector<std::pair<std::int64_t, std::int64_t>> grid; // (k, n)
    if (sweep.active) {
        for (std::int64_t k = sweep.k_lo; k <= sweep.k_hi; ++k)
            for (std::int64_t n = sweep.n_lo; n <= sweep.n_hi; ++n) grid.emplace_back(k, n);
    } else {
        CentralCharge c(c_in);
        grid.emplace_back(c.k(), n_in);
    }

    if (opt.format == "json") {
        ojson out = ojson::array();
        for (const auto& [k, n] : grid)
            out.push_back(ojson::parse(report_to_json(orbifold_report(CentralCharge(8 * k), n))));
        emit(sweep.active ? out : out[0]);
        return 0;
    }
    if (opt.format == "table") {
        std::cout << "n\tc\tk\tanomalous\tindex\tspectrum\n";
        for (const auto& [k, n] : grid) {
            auto r = orbifold_report(CentralCharge(8 * k), n);
            std::cout << r.n << "\t" << r.c << "\t" << r.k << "\t"
                      << (r.anomalous ? "yes" : "no") << "\t" << r.anomaly_index << "\t"
                      << joined_values(r.spectrum, false) << "\n";
        }
        return 0;
    }
    if (opt.format == "csv") {
        std::cout << "k,c,n,anomalous,anomaly_index\n";
        for (const auto& [k, n] : grid) {
            auto r = orbifold_report(CentralCharge(8 * k), n);
            std::cout << r.k << "," << r.c << "," << r.n << ","
                      << (r.anomalous ? 1 : 0) << "," << r.anomaly_index << "\n";
        }
        return 0;
    }
    throw InvalidInputError("anomaly: unsupported format '" + opt.format + "'");
}

// --------------------------------------------------------------- spectrum --

int run_spectrum(std::int64_t c_in, std::int64_t n_in, const Sweep& sweep, const Options& opt) {
    std::vector<std::pair<std::int64_t, std::int64_t>> grid;
    if (sweep.active) {
        for (std::int64_t k = sweep.k_lo; k <= sweep.k_hi; ++k)
            for (std::int64_t n = sweep.n_lo; n <= sweep.n_hi; ++n) grid.emplace_back(k, n);
    } else {
        CentralCharge c(c_in);
        grid.emplace_back(c.k(), n_in);
    }

    if (opt.format == "json") {
        if (!sweep.active) {
            emit(spectrum_values(twisted_sector_spectrum(CentralCharge(8 * grid[0].first),
                                                         grid[0].second),
                                 true));
            return 0;
        }
        ojson out = ojson::array();
        for (const auto& [k, n] : grid) {
            ojson entry;
            entry["k"] = k;
            entry["c"] = 8 * k;
            entry["n"] = n;
            entry["spectrum"] =
                spectrum_values(twisted_sector_spectrum(CentralCharge(8 * k), n), true);
            out.push_back(std::move(entry));
        }
        emit(out);
        return 0;
    }
    if (opt.format == "table" || opt.format == "csv") {
        const bool csv = opt.format == "csv";
        std::cout << (csv ? "k,c,n,spectrum\n" : "k\tc\tn\tspectrum\n");
        for (const auto& [k, n] : grid) {
            auto spec = twisted_sector_spectrum(CentralCharge(8 * k), n);
            const char* sep = csv ? "," : "\t";
            std::cout << k << sep << 8 * k << sep << n << sep
                      << joined_values(spec, true, csv ? ";" : " ") << "\n";
        }
        return 0;
    }
    throw InvalidInputError("spectrum: unsupported format '" + opt.format + "'");
}

// --------------------------------------------------------------- classify --

int run_classify(const std::string& input, const std::string& against, const Options& opt) {
    QuadraticForm f = form_from_json(read_input(input));

    ojson out;
    out["group"] = ojson::parse(group_to_json(f.group()));
    out["order"] = f.group().order();
    out["canonical_factors"] = canonicalize(f.group()).group().factors();
    const bool nondeg = f.is_nondegenerate();
    out["nondegenerate"] = nondeg;
    if (!nondeg) out["radical"] = ojson::parse(subgroup_to_json(f.radical()));
    ojson twists = ojson::array();
    for (const auto& v : twist_spectrum(f)) twists.push_back(v.str());
    out["twist_spectrum"] = std::move(twists);
    if (nondeg) {
        MetricGroup m(f);
        out["signature"] = gauss_signature(m);
        std::int64_t root = 1;
        while (root * root < m.group().order()) ++root;
        if (root * root == m.group().order() && m.group().order() <= opt.max_order)
            out["lagrangian_count"] = enumerate_lagrangians(m, opt.max_order).size();
        if (!against.empty()) {
            MetricGroup other(form_from_json(read_input(against)));
            auto iso = find_isomorphism(m, other);
            out["isomorphic"] = iso.has_value();
            if (iso) {
                ojson images = ojson::array();
                for (const auto& x : iso->images) images.push_back(x);
                out["generator_images"] = std::move(images);
            }
        }
    }

    if (opt.format == "json") {
        emit(out);
        return 0;
    }
    if (opt.format == "table") {
        for (const auto& [key, value] : out.items())
            std::cout << key << ": "
                      << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        return 0;
    }
    throw InvalidInputError("classify: unsupported format '" + opt.format + "'");
}

// ------------------------------------------------------------ lagrangians --

int run_lagrangians(const std::string& input, const Options& opt) {
    MetricGroup m(form_from_json(read_input(input)));
    auto ls = enumerate_lagrangians(m, opt.max_order);

    if (opt.format == "json") {
        ojson out;
        out["count"] = ls.size();
        ojson arr = ojson::array();
        for (const auto& l : ls) arr.push_back(ojson::parse(subgroup_to_json(l)));
        out["lagrangians"] = std::move(arr);
        emit(out);
        return 0;
    }
    if (opt.format == "table") {
        std::cout << "count: " << ls.size() << "\n";
        for (const auto& l : ls) {
            std::cout << " -";
            for (const auto& g : l.generators()) {
                std::cout << " (";
                for (std::size_t i = 0; i < g.size(); ++i) std::cout << (i ? "," : "") << g[i];
                std::cout << ")";
            }
            std::cout << "\n";
        }
        return 0;
    }
    throw InvalidInputError("lagrangians: unsupported format '" + opt.format + "'");
}

// ------------------------------------------------------- double / boxplus --

int emit_extension(const LagrangianExtension& e, const Options& opt) {
    if (opt.format == "json") {
        emit(ojson::parse(extension_to_json(e)));
        return 0;
    }
    if (opt.format == "table") {
        std::cout << "n: " << e.n() << "\n"
                  << "anomaly_index: " << e.anomaly_index() << "\n"
                  << "group: " << group_to_json(e.group()) << "\n"
                  << "iota: " << ojson(e.iota_generator()).dump() << "\n"
                  << "lift: " << ojson(e.lift_of_one()).dump() << "\n";
        return 0;
    }
    throw InvalidInputError("unsupported format '" + opt.format + "' for extensions");
}

int run_double(std::int64_t n, std::int64_t j, const Options& opt) {
    return emit_extension(twisted_double_cyclic(n, j), opt);
}

int run_boxplus(const std::string& lhs, const std::string& rhs, const Options& opt) {
    auto e1 = extension_from_json(read_input(lhs));
    auto e2 = extension_from_json(read_input(rhs));
    return emit_extension(boxplus(e1, e2), opt);
}

// --------------------------------------------------------------- table-z3 --

int run_table_z3(const Options& opt) {
    auto rows = z3_table();
    if (opt.format == "json") {
        ojson out = ojson::array();
        for (const auto& [j, m] : rows) {
            ojson row;
            row["class_index"] = j;
            row["metric"] = ojson::parse(form_to_json(m.form()));
            ojson twists = ojson::array();
            for (const auto& v : twist_spectrum(m)) twists.push_back(v.str());
            row["twists"] = std::move(twists);
            row["matches_twisted_double"] =
                find_isomorphism(m, twisted_double_cyclic(3, j).metric()).has_value();
            out.push_back(std::move(row));
        }
        emit(out);
        return 0;
    }
    if (opt.format == "table") {
        std::cout << "j\tgroup\tq_diag\ttwists\n";
        for (const auto& [j, m] : rows) {
            const auto& f = m.form();
            std::cout << j << "\t" << group_to_json(f.group()) << "\t";
            for (std::size_t i = 0; i < f.diag().size(); ++i)
                std::cout << (i ? "," : "") << f.diag()[i].str();
            std::cout << "\t" << joined_values(twist_spectrum(m), true) << "\n";
        }
        return 0;
    }
    throw InvalidInputError("table-z3: unsupported format '" + opt.format + "'");
}

// ----------------------------------------------------------------- figure --

int run_figure(std::int64_t c_in, std::int64_t n, const Options& opt) {
    const CentralCharge c(c_in);
    if (n < 3 || n % 3 != 0)
        throw InvalidInputError("figure: the grid view needs a cycle length divisible by 3");
    const std::int64_t m = n / 3;
    const std::int64_t shear = c.k() % 3;
    const std::int64_t shift = m * shear; // vertical rise across one x-period
    const QmodZ slope(shear, 3);          // shift / n

    if (opt.format == "json") {
        ojson out;
        out["n"] = n;
        out["c"] = c.c();
        out["k"] = c.k();
        out["shear"] = shear;
        out["slope"] = slope.str();
        out["period_vectors"] = ojson::array({ojson::array({n, shift}), ojson::array({0, n})});
        ojson pts = ojson::array();
        for (std::int64_t x = 0; x < n; ++x)
            for (std::int64_t y = 0; y < n; ++y) pts.push_back(ojson::array({x, y}));
        out["points"] = std::move(pts);
        ojson lines = ojson::array();
        for (std::int64_t y0 = 0; y0 < n; ++y0) {
            ojson line;
            line["intercept"] = y0;
            line["slope"] = slope.str();
            lines.push_back(std::move(line));
        }
        out["lines"] = std::move(lines);
        emit(out);
        return 0;
    }
    if (opt.format == "csv") {
        std::cout << "# torus grid: n=" << n << " c=" << c.c() << " k=" << c.k()
                  << " shear=" << shear << " shift=" << shift << "\n";
        std::cout << "kind,a,b\n";
        for (std::int64_t x = 0; x < n; ++x)
            for (std::int64_t y = 0; y < n; ++y) std::cout << "point," << x << "," << y << "\n";
        for (std::int64_t y0 = 0; y0 < n; ++y0)
            std::cout << "line," << y0 << "," << slope.str() << "\n";
        return 0;
    }
    if (opt.format == "svg") {
        const int scale = 40, pad = 30;
        const auto px = [&](double x) { return pad + x * scale; };
        const auto py = [&](double y, double x) {
            return pad + (n + static_cast<double>(shift)) * scale - (y + x * slope.value()) * scale;
        };
        const double w = 2 * pad + n * scale, h = 2 * pad + (n + shift) * scale;
        std::cout << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << " " << h
                  << "\">\n";
        std::cout << "  <path d=\"M " << px(0) << " " << py(0, 0) << " L " << px(n) << " "
                  << py(0, n) << " L " << px(n) << " " << py(n, n) << " L " << px(0) << " "
                  << py(n, 0) << " Z\" fill=\"#f4f4f4\" stroke=\"black\"/>\n";
        for (std::int64_t y0 = 0; y0 < n; ++y0)
            std::cout << "  <line x1=\"" << px(0) << "\" y1=\"" << py(y0, 0) << "\" x2=\""
                      << px(n) << "\" y2=\"" << py(y0, n) << "\" stroke=\""
                      << (y0 % 3 == 0 ? "#444" : "#bbb") << "\"/>\n";
        for (std::int64_t x = 0; x < n; ++x)
            for (std::int64_t y = 0; y < n; ++y)
                std::cout << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y, x)
                          << "\" r=\"3\"/>\n";
        std::cout << "</svg>\n";
        return 0;
    }
    throw InvalidInputError("figure: unsupported format '" + opt.format + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact classifier for pointed modular data, Lagrangian extensions and "
                 "cyclic orbifold anomalies"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("ANOMALIA_MAX_ORDER")) {
        try {
            opt.max_order = std::stoll(env);
        } catch (const std::exception&) {
            std::cerr << "anomalia: bad ANOMALIA_MAX_ORDER value\n";
            return 2;
        }
    }

    std::int64_t c = 0, n = 0, j = 0;
    std::string sweep_text, input, against, lhs, rhs;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "table", "csv", "svg"}));
        sub->add_option("--max-order", opt.max_order,
                        "enumeration bound on group order (env ANOMALIA_MAX_ORDER)");
    };

    auto* anomaly = app.add_subcommand("anomaly", "anomaly verdict and report for (c, n)");
    anomaly->add_option("-c,--central-charge", c, "central charge (multiple of 8)");
    anomaly->add_option("-n,--cycle", n, "cycle length");
    anomaly->add_option("--sweep", sweep_text, "grid sweep, e.g. k=1..12,n=1..30");
    add_common(anomaly);

    auto* spectrum = app.add_subcommand("spectrum", "twisted-sector conformal weights mod 1");
    spectrum->add_option("-c,--central-charge", c, "central charge (multiple of 8)");
    spectrum->add_option("-n,--cycle", n, "cycle length");
    spectrum->add_option("--sweep", sweep_text, "grid sweep, e.g. k=1..12,n=1..30");
    add_common(spectrum);

    auto* classify = app.add_subcommand("classify", "invariants of a metric group");
    classify->add_option("--input", input, "metric group JSON file (- for stdin)")->required();
    classify->add_option("--against", against, "second metric group to test isomorphism");
    add_common(classify);

    auto* lagrangians = app.add_subcommand("lagrangians", "enumerate Lagrangian subgroups");
    lagrangians->add_option("--input", input, "metric group JSON file (- for stdin)")->required();
    add_common(lagrangians);

    auto* dbl = app.add_subcommand("double", "twisted double of a cyclic group");
    dbl->add_option("-n,--cycle", n, "group order")->required();
    dbl->add_option("-j,--class", j, "anomaly class index");
    add_common(dbl);

    auto* bp = app.add_subcommand("boxplus", "product of two Lagrangian extensions");
    bp->add_option("--lhs", lhs, "left extension JSON file")->required();
    bp->add_option("--rhs", rhs, "right extension JSON file")->required();
    add_common(bp);

    auto* tz3 = app.add_subcommand("table-z3", "the three twisted doubles over Z3");
    add_common(tz3);

    auto* figure = app.add_subcommand("figure", "torus grid and grading-line data");
    figure->add_option("-c,--central-charge", c, "central charge (multiple of 8)")->required();
    figure->add_option("-n,--cycle", n, "cycle length (divisible by 3)")->required();
    add_common(figure);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Sweep sweep = parse_sweep(sweep_text);
        if (app.got_subcommand(anomaly)) return run_anomaly(c, n, sweep, opt);
        if (app.got_subcommand(spectrum)) return run_spectrum(c, n, sweep, opt);
        if (app.got_subcommand(classify)) return run_classify(input, against, opt);
        if (app.got_subcommand(lagrangians)) return run_lagrangians(input, opt);
        if (app.got_subcommand(dbl)) return run_double(n, j, opt);
        if (app.got_subcommand(bp)) return run_boxplus(lhs, rhs, opt);
        if (app.got_subcommand(tz3)) return run_table_z3(opt);
        if (app.got_subcommand(figure)) return run_figure(c, n, opt);
        std::cerr << "anomalia: no command selected\n";
        return 2;
    } catch (const ResourceLimitError& e) {
        std::cerr << "anomalia: resource limit: " << e.what() << "\n";
        return 3;
    } catch (const InvalidInputError& e) {
        std::cerr << "anomalia: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "anomalia: " << e.what() << "\n";
        return 1;
    }
}
