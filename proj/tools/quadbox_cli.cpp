// quadbox: tetrahedra-free quadrature rules of prescribed polynomial
// exactness on arbitrary polyhedra, built from bounding-box Chebyshev
// hyperinterpolation and divergence-theorem moments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <json.hpp>

#include "quadbox/errors.hpp"
#include "quadbox/oracle.hpp"
#include "quadbox/rule.hpp"
#include "quadbox/serialization.hpp"
#include "quadbox/shapes.hpp"

namespace {

using namespace quadbox;
using nlohmann::json;

constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitDegreeCap = 3;
constexpr int kExitDegreeExceeded = 4;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Polyhedron load_validated(const std::string& path) {
    const Polyhedron p = load_off_file(path);
    const ValidationReport report = validate(p);
    if (!report.passed) {
        std::ostringstream why;
        why << "validation failed for '" << path << "':";
        if (!report.edge_pairing_ok) why << " " << report.edge_pairing_detail << ";";
        if (!report.faces_well_formed) why << " " << report.face_detail << ";";
        double worst_planarity = 0.0;
        for (double d : report.face_planarity)
            worst_planarity = std::max(worst_planarity, d);
        why << " worst planarity " << worst_planarity << ", vector-area residual "
            << report.vector_area_residual << ", volume " << report.volume;
        throw std::runtime_error(why.str());
    }
    return p;
}

struct MonomialTerm {
    double coeff;
    int a, b, c;
};

std::vector<MonomialTerm> load_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open poly file '" + path + "'");
    std::vector<MonomialTerm> terms;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        MonomialTerm t;
        if (!(ss >> t.coeff)) continue; // blank line
        if (!(ss >> t.a >> t.b >> t.c) || t.a < 0 || t.b < 0 || t.c < 0)
            throw ParseError("poly file line " + std::to_string(line_no) +
                             ": expected 'coeff a b c'");
        std::string extra;
        if (ss >> extra)
            throw ParseError("poly file line " + std::to_string(line_no) +
                             ": trailing token '" + extra + "'");
        terms.push_back(t);
    }
    if (terms.empty()) throw ParseError("poly file '" + path + "' has no terms");
    return terms;
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

struct LinearPower {
    double a, b, c, d;
    int n;
    double eval(const Vec3& p) const {
        return std::pow(a * p[0] + b * p[1] + c * p[2] + d, n);
    }
    std::vector<double> monomial_coefficients(const MultiIndexSet& idx) const {
        std::vector<double> coeff(idx.size(), 0.0);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j)
                for (int k = 0; i + j + k <= n; ++k) {
                    const double mult =
                        binomial(n, i) * binomial(n - i, j) * binomial(n - i - j, k);
                    coeff[idx.index_of({i, j, k})] =
                        mult * std::pow(a, i) * std::pow(b, j) * std::pow(c, k) *
                        std::pow(d, n - i - j - k);
                }
        return coeff;
    }
};

double orthonormality_residual(const RuleCache::Entry& entry) {
    const VandermondeMatrix& v = entry.vandermonde;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        V(v.values.data(), static_cast<Eigen::Index>(v.rows),
          static_cast<Eigen::Index>(v.cols));
    const Eigen::MatrixXd gram = entry.box.weight * (V.transpose() * V);
    const Eigen::MatrixXd eye =
        Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    return (gram - eye).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- rule ---

int cmd_rule(const std::string& off_path, int degree, const std::string& format,
             const std::string& out_path, int threads) {
    if (degree < 0 || degree > kMaxDegree) {
        std::cerr << "degree " << degree << " outside [0," << kMaxDegree << "]\n";
        return kExitDegreeCap;
    }
    const Polyhedron p = load_validated(off_path);
    RuleCache cache;
    const QuadratureRule rule = build_rule(p, degree, cache, threads);

    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        if (format == "csv")
            rule_to_csv(out, rule);
        else
            out << rule_to_json(rule) << '\n';
    }
    std::cout << "degree " << rule.degree << ", nodes " << rule.size() << '\n';
    std::cout << "volume " << fmt17(rule.volume_estimate) << '\n';
    std::cout << "stability_ratio " << fmt17(rule.stability_ratio) << '\n';
    return 0;
}

// ----------------------------------------------------------- integrate ---

int cmd_integrate(const std::string& off_path, int degree,
                  const std::string& poly_path, int threads) {
    if (degree < 0 || degree > kMaxDegree) {
        std::cerr << "degree " << degree << " outside [0," << kMaxDegree << "]\n";
        return kExitDegreeCap;
    }
    const Polyhedron p = load_validated(off_path);
    const std::vector<MonomialTerm> terms = load_poly_file(poly_path);
    for (const MonomialTerm& t : terms) {
        if (t.a + t.b + t.c > degree) {
            std::cerr << "warning: term of degree " << (t.a + t.b + t.c)
                      << " exceeds exactness degree " << degree
                      << "; the rule is not exact for it\n";
            return kExitDegreeExceeded;
        }
    }
    RuleCache cache;
    const QuadratureRule rule = build_rule(p, degree, cache, threads);
    std::vector<double> samples;
    samples.reserve(rule.size());
    for (const Vec3& node : rule.nodes) {
        double v = 0.0;
        for (const MonomialTerm& t : terms)
            v += t.coeff * std::pow(node[0], t.a) * std::pow(node[1], t.b) *
                 std::pow(node[2], t.c);
        samples.push_back(v);
    }
    std::cout << fmt17(quadbox::apply(rule, samples)) << '\n';
    return 0;
}

// ---------------------------------------------------------------- check ---

int cmd_check(const std::string& off_path, int nmax, unsigned seed,
              const std::string& out_path, int threads) {
    if (nmax < 4 || nmax > kMaxDegree) {
        std::cerr << "--nmax " << nmax << " outside [4," << kMaxDegree << "]\n";
        return kExitDegreeCap;
    }
    const Polyhedron p = load_validated(off_path);
    const double vol = divergence_volume(p);
    const AffineMap map = affine_map(bounding_box(p));

    // Reference for the random-integrand family: analytic box union when
    // the file matches a registered shape, the fan-tet oracle when convex,
    // the y-primitive rule otherwise.
    std::string reference = "y-primitive-crosscheck";
    std::optional<oracle::BoxUnion> box_union = shapes::box_union_for(p.label());
    if (box_union) {
        const double uvol = oracle::union_monomial_integral(*box_union, 0, 0, 0);
        if (std::abs(uvol - vol) <= 1e-9 * vol)
            reference = "box-union";
        else
            box_union.reset(); // same name, different solid
    }
    const bool convex = !box_union && shapes::is_convex(p);
    if (convex) reference = "convex-oracle";

    RuleCache cache;
    std::mt19937 gen(seed);
    auto u11 = [&]() {
        return 2.0 * (static_cast<double>(gen()) / 4294967296.0) - 1.0;
    };

    json degrees = json::array();
    std::ostringstream csv;
    csv << "n,ratio,mean_log_err\n";
    std::vector<double> ref_monomials;
    if (reference == "box-union")
        ref_monomials = oracle::union_monomials_all(*box_union, nmax);
    else if (reference == "convex-oracle")
        ref_monomials = oracle::convex_tet_oracle_all(p, nmax);

    for (int n = 4; n <= nmax; n += 2) {
        const QuadratureRule rule = build_rule(p, n, cache, threads);
        const StabilityReport stab = stability_report(rule);
        const double vol_residual = std::abs(rule.volume_estimate - vol) / vol;
        const double orth = orthonormality_residual(*cache.get(n));
        const double crosscheck = moments_crosscheck(p, map, n, threads);

        // 200 random g = (ax+by+cz+d)^n.
        const MultiIndexSet idx(n);
        QuadratureRule rule_y; // only for the fallback reference
        if (reference == "y-primitive-crosscheck") {
            MomentOptions yopts;
            yopts.threads = threads;
            yopts.primitive_axis = 1;
            const MomentVector my = polyhedron_moments(p, map, n, yopts);
            const auto entry = cache.get(n);
            rule_y.degree = n;
            rule_y.nodes = rule.nodes;
            rule_y.weights.resize(entry->vandermonde.rows);
            KahanSum vsum;
            for (std::size_t i = 0; i < entry->vandermonde.rows; ++i) {
                KahanSum dotp;
                const double* row = entry->vandermonde.row(i);
                for (std::size_t j = 0; j < entry->vandermonde.cols; ++j)
                    dotp.add(row[j] * my.values[j]);
                rule_y.weights[i] = map.jacobian * entry->box.weight * dotp.value();
                vsum.add(rule_y.weights[i]);
            }
            rule_y.volume_estimate = vsum.value();
        }

        double log_sum = 0.0;
        double max_err = 0.0;
        const int trials = 200;
        for (int t = 0; t < trials; ++t) {
            const LinearPower g{u11(), u11(), u11(), u11(), n};
            std::vector<double> samples;
            samples.reserve(rule.size());
            for (const Vec3& node : rule.nodes) samples.push_back(g.eval(node));
            const double got = quadbox::apply(rule, samples);
            double ref;
            if (reference == "y-primitive-crosscheck") {
                ref = quadbox::apply(rule_y, samples);
            } else {
                // Graded ordering makes MultiIndexSet(n) a prefix of
                // MultiIndexSet(nmax), so indices line up directly.
                const std::vector<double> coeff = g.monomial_coefficients(idx);
                KahanSum acc;
                for (std::size_t j = 0; j < coeff.size(); ++j)
                    acc.add(coeff[j] * ref_monomials[j]);
                ref = acc.value();
            }
            const double rel = std::abs(got - ref) / std::max(std::abs(ref), 1e-300);
            max_err = std::max(max_err, rel);
            log_sum += std::log10(std::max(rel, 1e-18));
        }
        const double mean_log = log_sum / trials;

        json row;
        row["n"] = n;
        row["ratio"] = stab.ratio;
        row["sum_w"] = rule.volume_estimate;
        row["volume_residual"] = vol_residual;
        row["orthonormality_residual"] = orth;
        row["crosscheck_residual"] = crosscheck;
        row["mean_log10_error"] = mean_log;
        row["max_error"] = max_err;
        row["negative_weights"] = stab.negative_count;
        degrees.push_back(row);
        csv << n << ',' << fmt17(stab.ratio) << ',' << fmt17(mean_log) << '\n';
        std::cout << "n=" << n << " ratio=" << stab.ratio << " orth=" << orth
                  << " crosscheck=" << crosscheck << " mean_log_err=" << mean_log
                  << '\n';
    }

    json report;
    report["shape"] = p.label();
    report["path"] = off_path;
    report["volume"] = vol;
    report["nmax"] = nmax;
    report["seed"] = seed;
    report["reference"] = reference;
    report["degrees"] = std::move(degrees);

    std::string json_path = out_path.empty() ? "check_report.json" : out_path;
    std::ofstream jout(json_path);
    if (!jout) throw std::runtime_error("cannot write '" + json_path + "'");
    jout << report.dump(2) << '\n';

    std::string csv_path = json_path;
    const auto dot = csv_path.rfind('.');
    if (dot != std::string::npos) csv_path.erase(dot);
    csv_path += ".csv";
    std::ofstream cout_file(csv_path);
    if (!cout_file) throw std::runtime_error("cannot write '" + csv_path + "'");
    cout_file << csv.str();

    std::cout << "report: " << json_path << "\ncsv: " << csv_path << '\n';
    return 0;
}

// ---------------------------------------------------------------- bench ---

int cmd_bench(const std::string& off_path, int nmax, int repeats,
              const std::string& out_path, int threads) {
    if (nmax < 4 || nmax > kMaxDegree) {
        std::cerr << "--nmax " << nmax << " outside [4," << kMaxDegree << "]\n";
        return kExitDegreeCap;
    }
    const Polyhedron p = load_validated(off_path);
    using clock = std::chrono::steady_clock;

    std::ostringstream csv;
    csv << "n,cold_s,warm_s\n";
    for (int n = 4; n <= nmax; n += 2) {
        double cold_total = 0.0;
        for (int r = 0; r < repeats; ++r) {
            RuleCache fresh;
            const auto t0 = clock::now();
            build_rule(p, n, fresh, threads);
            cold_total += std::chrono::duration<double>(clock::now() - t0).count();
        }
        RuleCache warm;
        warm.get(n); // prebuild the element-independent data
        double warm_total = 0.0;
        for (int r = 0; r < repeats; ++r) {
            const auto t0 = clock::now();
            build_rule(p, n, warm, threads);
            warm_total += std::chrono::duration<double>(clock::now() - t0).count();
        }
        const double cold = cold_total / repeats;
        const double warmed = warm_total / repeats;
        csv << n << ',' << fmt17(cold) << ',' << fmt17(warmed) << '\n';
        std::printf("n=%2d  cold %.6f s  warm %.6f s\n", n, cold, warmed);
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
        out << csv.str();
    }
    return 0;
}

// --------------------------------------------------------------- shapes ---

int cmd_shapes(const std::string& name, const std::string& out_path) {
    const Polyhedron p = shapes::by_name(name);
    const ValidationReport r = validate(p);
    if (!r.passed) throw std::runtime_error("built-in shape failed validation");
    write_off_file(out_path, p);
    std::cout << name << ": " << p.vertex_count() << " vertices, " << p.face_count()
              << " faces, volume " << fmt17(r.volume) << " -> " << out_path << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadbox: stable tetrahedra-free quadrature on polyhedra"};
    app.require_subcommand(1);

    std::string off_path, out_path, poly_path, format = "json", shape_name;
    int degree = 4, nmax = 20, repeats = 3, threads = 0;
    unsigned seed = 0;

    auto* rule = app.add_subcommand("rule", "build a quadrature rule from an OFF file");
    rule->add_option("off", off_path, "OFF file")->required();
    rule->add_option("--degree", degree, "exactness degree (0..30)")->required();
    rule->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    rule->add_option("--out", out_path, "output path");
    rule->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* integrate = app.add_subcommand("integrate", "integrate a polynomial");
    integrate->add_option("off", off_path, "OFF file")->required();
    integrate->add_option("--degree", degree, "exactness degree")->required();
    integrate->add_option("--poly", poly_path, "file of 'coeff a b c' terms")
        ->required();
    integrate->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* check = app.add_subcommand("check", "run diagnostics over even degrees");
    check->add_option("off", off_path, "OFF file")->required();
    check->add_option("--nmax", nmax, "largest degree (even, 4..30)");
    check->add_option("--seed", seed, "random seed for the integrand family");
    check->add_option("--out", out_path, "JSON report path (CSV lands beside it)");
    check->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* bench = app.add_subcommand("bench", "time rule construction");
    bench->add_option("off", off_path, "OFF file")->required();
    bench->add_option("--nmax", nmax, "largest degree");
    bench->add_option("--repeats", repeats, "repeats per degree")
        ->check(CLI::PositiveNumber);
    bench->add_option("--out", out_path, "timing CSV path");
    bench->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* shapes_cmd = app.add_subcommand("shapes", "write a built-in test shape");
    shapes_cmd->add_option("--name", shape_name, "cube|tet|lprism|holedprism|hull20")
        ->required();
    shapes_cmd->add_option("--out", out_path, "OFF output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (rule->parsed())
            return cmd_rule(off_path, degree, format, out_path, threads);
        if (integrate->parsed())
            return cmd_integrate(off_path, degree, poly_path, threads);
        if (check->parsed())
            return cmd_check(off_path, nmax, seed, out_path, threads);
        if (bench->parsed())
            return cmd_bench(off_path, nmax, repeats, out_path, threads);
        if (shapes_cmd->parsed()) return cmd_shapes(shape_name, out_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const IndexOutOfRange& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const DegreeCapExceeded& e) {
        std::cerr << e.what() << '\n';
        return kExitDegreeCap;
    } catch (const UnknownShape& e) {
        std::cerr << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
