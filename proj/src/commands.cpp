#include "abvp/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "abvp/certify.hpp"
#include "abvp/eigen.hpp"
#include "abvp/problem.hpp"
#include "abvp/solver.hpp"
#include "abvp/svg.hpp"
#include "abvp/verify.hpp"

namespace abvp::cli {

namespace {

std::string f17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int run_guarded(std::ostream& out, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        out << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        out << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        out << "error: " << e.what() << "\n";
        return kExitNoConverge;
    } catch (const EvalError& e) {
        out << "error: " << e.what() << "\n";
        return kExitNoConverge;
    } catch (const std::exception& e) {
        out << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

void emit_csv(const OutputOpts& opts, std::ostream& out, const std::string& csv) {
    if (opts.csv_path) {
        std::ofstream f(*opts.csv_path, std::ios::binary);
        if (!f)
            throw ValidationError("cannot open \"" + *opts.csv_path + "\" for writing");
        f << csv;
        out << "csv: " << *opts.csv_path << "\n";
    } else {
        out << csv;
    }
}

void maybe_svg(const OutputOpts& opts, std::ostream& out, const std::string& title,
               const std::string& xl, const std::string& yl,
               const std::vector<SvgSeries>& series) {
    if (!opts.svg_path) return;
    write_line_chart(*opts.svg_path, title, xl, yl, series);
    out << "svg: " << *opts.svg_path << "\n";
}

void print_hypothesis(const HypothesisReport& h, std::ostream& out) {
    out << "  " << hypothesis_name(h.id) << " -- " << (h.holds ? "holds" : "FAILS")
        << "; margin " << f17(h.margin) << "; witness (t,u) = (" << f17(h.worst_t) << ", "
        << f17(h.worst_u) << "); samples " << h.samples;
    if (h.limit_estimate)
        out << "; limit estimate " << f17(*h.limit_estimate);
    out << "\n";
    if (!h.note.empty())
        out << "      note: " << h.note << "\n";
}

void print_range(const LambdaRange& range, std::ostream& out) {
    out << "theorem " << theorem_name(range.theorem) << "\n";
    out << "certified range: ";
    if (range.lower && range.upper)
        out << "lambda in (" << f17(*range.lower) << ", " << f17(*range.upper)
            << ")  [both endpoints strict]\n";
    else if (range.lower)
        out << "lambda > " << f17(*range.lower) << "  [strict]\n";
    else
        out << "0 < lambda < " << f17(*range.upper) << "  [strict]\n";
    out << "conclusion: " << range.conclusion << "\n";
    const LambdaRangeInputs& in = range.inputs;
    out << "inputs:\n";
    if (in.radius_R) out << "  R = " << f17(*in.radius_R) << "\n";
    if (in.radius_r) out << "  r = " << f17(*in.radius_r) << "\n";
    if (in.delta) out << "  delta = " << f17(*in.delta) << "\n";
    if (in.c) out << "  c = " << f17(*in.c) << "\n";
    if (in.ratio_used) {
        out << "  ratio used = " << f17(*in.ratio_used)
            << (in.ratio_overridden ? "  (override)" : "  (computed)") << "\n";
        out << "  ratio computed from grid = " << f17(*in.ratio_computed) << "\n";
    }
    if (in.weight_integral)
        out << "  I[" << f17(in.weight_lo) << ", " << f17(in.weight_hi)
            << "] = " << f17(*in.weight_integral) << "\n";
    if (in.lambda1_qb) out << "  lambda_1(q b) = " << f17(*in.lambda1_qb) << "\n";
}

void print_verification(const VerificationReport& rep, std::ostream& out) {
    out << "verification:\n";
    for (const CheckResult& c : rep.checks) {
        out << "  " << c.name << ": " << (c.pass ? "PASS" : "FAIL") << " (measured "
            << f17(c.measured) << ", tolerance " << f17(c.tolerance) << ")";
        if (!c.note.empty()) out << "  [" << c.note << "]";
        out << "\n";
    }
    out << "  overall: " << (rep.overall ? "PASS" : "FAIL") << "\n";
}

void print_solve_report(const SolveReport& rep, std::ostream& out) {
    out << "method: " << (rep.method == SolveMethod::Picard ? "picard" : "shoot") << "\n";
    out << "lambda: " << f17(rep.lambda) << "\n";
    out << "converged: " << (rep.converged ? "yes" : "no") << " (iterations "
        << rep.iterations << ")\n";
    if (rep.method == SolveMethod::Shoot)
        out << "initial slope: " << f17(rep.initial_slope) << "\n";
    out << "sup_norm: " << f17(rep.sup_norm) << "\n";
    out << "min on [1/4,3/4]: " << f17(rep.min_on_quarter) << "\n";
    out << "residual ||u - Tu||: " << f17(rep.residual_integral) << "\n";
    out << "residual ODE: " << f17(rep.residual_ode) << "\n";
}

CertifyOptions certify_options(const ProblemFile& pf) {
    CertifyOptions opts;
    opts.rule = pf.quadrature;
    opts.eigen = pf.eigen;
    return opts;
}

double require_field(const std::optional<double>& field, const char* name) {
    if (!field)
        throw ValidationError(std::string("missing required field \"") + name + "\"");
    return *field;
}

// ---------------------------------------------------------------------------
// examples: built-in replications printing expected vs computed

struct Repro {
    std::string label;
    double expected;
    double computed;
};

bool print_repros(const std::vector<Repro>& items, std::ostream& out) {
    bool all_ok = true;
    for (const Repro& it : items) {
        const double rel = std::fabs(it.computed - it.expected) /
                           std::max(1e-300, std::fabs(it.expected));
        const bool ok = rel <= 1e-9;
        all_ok = all_ok && ok;
        out << "  " << it.label << ": expected " << f17(it.expected) << ", computed "
            << f17(it.computed) << ", rel err " << f17(rel) << "  "
            << (ok ? "PASS" : "FAIL") << "\n";
    }
    return all_ok;
}

ReducedBVP example_bvp(const char* f_src) {
    return make_interval_bvp(Expr::parse("1", vars_t), Expr::parse(f_src, vars_tu));
}

int examples_11(std::ostream& out) {
    out << "example 1.1: f = u^2/(1+u), q = 1, stated m_R = 1, threshold 16/(m I)\n";
    ReducedBVP bvp = example_bvp("u^2/(1+u)");
    Certification cert = certify_T11(1.0, 1.0, bvp);
    const bool ok = print_repros(
        {{"lambda_R lower bound (1536/11)", 1536.0 / 11.0, *cert.range.lower}}, out);
    out << "  computed grid m_R = " << f17(*cert.range.inputs.ratio_computed)
        << " (the sampled minimum of u/(1+u); the stated arithmetic uses m_R = 1)\n";
    for (const auto& h : cert.hypotheses) print_hypothesis(h, out);
    return ok ? kExitOk : kExitNoConverge;
}

int examples_12(std::ostream& out) {
    out << "example 1.2: f = sqrt(u)+u/2, q = 1, stated M_R = 1/sqrt(R)+1/2,\n";
    out << "             threshold 1/(M I) = 12 sqrt(R)/(2+sqrt(R)), sup 12\n";
    out << "  warning: the stated M_R is a lower bound of the ratio maximum (which\n";
    out << "  diverges as u -> 0+); reproduced as stated arithmetic only.\n";
    ReducedBVP bvp = example_bvp("sqrt(u)+u/2");
    std::vector<Repro> items;
    for (double R : {1.0, 4.0, 100.0}) {
        Certification cert = certify_T12(R, 1.0 / std::sqrt(R) + 0.5, bvp);
        items.push_back({"upper bound at R = " + f17(R),
                         12.0 * std::sqrt(R) / (2.0 + std::sqrt(R)), *cert.range.upper});
    }
    Certification sup = certify_T12(1e20, 1.0 / std::sqrt(1e20) + 0.5, bvp);
    items.push_back({"supremum over R (-> 12)", 12.0, *sup.range.upper});
    const bool ok = print_repros(items, out);
    Certification info = certify_T12(4.0, 1.0, bvp);
    for (const auto& h : info.hypotheses) print_hypothesis(h, out);
    return ok ? kExitOk : kExitNoConverge;
}

int examples_13(std::ostream& out) {
    out << "example 1.3: f = u/(1+u), q = 1, stated m_r = 1, threshold 4/(m I)\n";
    ReducedBVP bvp = example_bvp("u/(1+u)");
    Certification cert = certify_T13(1.0, 1.0, bvp);
    const bool ok = print_repros(
        {{"lambda_r lower bound (384/11)", 384.0 / 11.0, *cert.range.lower}}, out);
    out << "  computed grid m_r = " << f17(*cert.range.inputs.ratio_computed)
        << " (minimum of 1/(1+u) on (0,r]; the stated arithmetic uses m_r = 1)\n";
    for (const auto& h : cert.hypotheses) print_hypothesis(h, out);
    return ok ? kExitOk : kExitNoConverge;
}

int examples_14(std::ostream& out) {
    out << "example 1.4: f = u^3+u/2, q = 1, stated M_r = r^2+1/2,\n";
    out << "             threshold 1/(M I) = 12/(2 r^2 + 1), maximum 12 at r = 0\n";
    ReducedBVP bvp = example_bvp("u^3+u/2");
    std::vector<Repro> items;
    for (double r : {1.0, 0.5}) {
        Certification cert = certify_T14(r, r * r + 0.5, bvp);
        items.push_back({"upper bound at r = " + f17(r), 12.0 / (2.0 * r * r + 1.0),
                         *cert.range.upper});
    }
    Certification at_zero = certify_T14(1e-12, 0.5 + 1e-24, bvp);
    items.push_back({"maximum at r -> 0", 12.0, *at_zero.range.upper});
    const bool ok = print_repros(items, out);
    for (const auto& h : at_zero.hypotheses) print_hypothesis(h, out);
    return ok ? kExitOk : kExitNoConverge;
}

int examples_41(std::ostream& out) {
    const double pi_sq = M_PI * M_PI;
    out << "example 4.1: f = u^3, q = 1, b = 1, c = 2; construction c delta^2 > 1,\n";
    out << "             R = c delta (delta = 0.75, R = 1.5); window (pi^2/c, pi^2)\n";
    ReducedBVP bvp = example_bvp("u^3");
    ScalarFn b = [](double) { return 1.0; };
    Certification cert = certify_T41(b, 2.0, 0.75, 1.5, bvp);
    const bool ok = print_repros({{"lambda_1(q b) (= pi^2)", pi_sq, *cert.range.upper},
                                  {"window lower end (pi^2/2)", pi_sq / 2.0,
                                   *cert.range.lower}},
                                 out);
    for (const auto& h : cert.hypotheses) print_hypothesis(h, out);
    return ok ? kExitOk : kExitNoConverge;
}

int examples_42(std::ostream& out) {
    const double pi_sq = M_PI * M_PI;
    const double delta = 0.5;
    out << "example 4.2: f = u^(-1), q = 1, b = 1, delta = 0.5, c = 1/delta^2 = 4,\n";
    out << "             R = 2; window (delta^2 pi^2, pi^2)\n";
    ReducedBVP bvp = example_bvp("u^(-1)");
    ScalarFn b = [](double) { return 1.0; };
    Certification cert = certify_T42(b, 1.0 / (delta * delta), delta, 2.0, bvp);
    const bool ok = print_repros(
        {{"window upper end (pi^2)", pi_sq, *cert.range.upper},
         {"window lower end (delta^2 pi^2)", delta * delta * pi_sq, *cert.range.lower}},
        out);
    for (const auto& h : cert.hypotheses) print_hypothesis(h, out);
    return ok ? kExitOk : kExitNoConverge;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<double, double>> read_solution_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open solution csv \"" + path + "\"");
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("solution csv is empty");
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ValidationError("solution csv: expected two comma-separated columns");
        rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    }
    if (rows.size() < 3)
        throw ValidationError("solution csv: needs at least 3 rows");
    return rows;
}

} // namespace

int cmd_reduce(const std::string& file, const OutputOpts& opts, std::ostream& out) {
    return run_guarded(out, [&]() {
        ProblemFile pf = ProblemFile::load(file);
        if (pf.mode != ProblemFile::Mode::Annulus)
            throw ValidationError("reduce requires mode=annulus");
        const AnnularProblem& p = *pf.annulus;
        ReducedBVP bvp = reduce(p);

        out << "reduced " << bvp.provenance << " to u'' + lambda q(t) f(t,u) = 0 on (0,1)\n";
        if (bvp.A) {
            out << "A = " << f17(*bvp.A) << "\n";
            out << "B = " << f17(*bvp.B) << "\n";
        }
        constexpr int kGrid = 1001;
        double qmin = 0.0, qmax = 0.0, at_min = 0.0, at_max = 0.0;
        std::string csv = "t,q,r\n";
        SvgSeries q_series{"q(t)", {}, {}};
        for (int i = 0; i < kGrid; ++i) {
            const double t = static_cast<double>(i) / (kGrid - 1);
            const double q = bvp.q(t);
            const double r = map_t_to_r(t, p);
            if (i == 0 || q < qmin) { qmin = q; at_min = t; }
            if (i == 0 || q > qmax) { qmax = q; at_max = t; }
            csv += f17(t) + "," + f17(q) + "," + f17(r) + "\n";
            q_series.x.push_back(t);
            q_series.y.push_back(q);
        }
        out << "q min over 1001-grid: " << f17(qmin) << " at t = " << f17(at_min) << "\n";
        out << "q max over 1001-grid: " << f17(qmax) << " at t = " << f17(at_max) << "\n";
        maybe_svg(opts, out, "reduced weight", "t", "q(t)", {q_series});
        emit_csv(opts, out, csv);
        return kExitOk;
    });
}

int cmd_certify(const std::string& file, const std::string& theorem, std::ostream& out) {
    return run_guarded(out, [&]() {
        ProblemFile pf = ProblemFile::load(file);
        ReducedBVP bvp = pf.to_bvp();
        CertifyOptions copts = certify_options(pf);

        Certification cert = [&]() {
            if (theorem == "1.1")
                return certify_T11(require_field(pf.R, "R"), pf.m_override, bvp, copts);
            if (theorem == "1.2")
                return certify_T12(require_field(pf.R, "R"), pf.M_override, bvp, copts);
            if (theorem == "1.3")
                return certify_T13(require_field(pf.r, "r"), pf.m_override, bvp, copts);
            if (theorem == "1.4")
                return certify_T14(require_field(pf.r, "r"), pf.M_override, bvp, copts);
            if (theorem == "4.1")
                return certify_T41(pf.b_fn(), require_field(pf.c, "c"),
                                   require_field(pf.delta, "delta"),
                                   require_field(pf.R, "R"), bvp, copts);
            if (theorem == "4.2")
                return certify_T42(pf.b_fn(), require_field(pf.c, "c"),
                                   require_field(pf.delta, "delta"),
                                   require_field(pf.R, "R"), bvp, copts);
            throw ValidationError("unknown theorem \"" + theorem +
                                  "\" (expected 1.1, 1.2, 1.3, 1.4, 4.1 or 4.2)");
        }();

        print_range(cert.range, out);
        out << "hypotheses:\n";
        for (const auto& h : cert.hypotheses) print_hypothesis(h, out);
        return kExitOk;
    });
}

int cmd_eigen(const std::string& file, const OutputOpts& opts, std::ostream& out) {
    return run_guarded(out, [&]() {
        ProblemFile pf = ProblemFile::load(file);
        ReducedBVP bvp = pf.to_bvp();
        ScalarFn b = pf.b_fn();
        ScalarFn m = [&bvp, &b](double t) { return bvp.q(t) * b(t); };

        EigenResult shoot = first_eigen_shoot(m, pf.eigen);
        EigenResult fd = first_eigen_fd(m, pf.fd_n);
        const double gap = std::fabs(shoot.lambda1 - fd.lambda1) / shoot.lambda1;

        out << "lambda_1 (shooting): " << f17(shoot.lambda1) << "\n";
        out << "lambda_1 (fd matrix, Richardson): " << f17(fd.lambda1) << "\n";
        out << "relative gap: " << f17(gap) << "\n";
        out << "shooting residual: " << f17(shoot.residual) << "\n";

        std::string csv = "t,phi\n";
        SvgSeries series{"phi_1", {}, {}};
        for (std::size_t i = 0; i < shoot.phi.size(); ++i) {
            const double t = shoot.phi.node(i);
            csv += f17(t) + "," + f17(shoot.phi[i]) + "\n";
            series.x.push_back(t);
            series.y.push_back(shoot.phi[i]);
        }
        maybe_svg(opts, out, "first eigenfunction", "t", "phi(t)", {series});
        emit_csv(opts, out, csv);
        return kExitOk;
    });
}

int cmd_solve(const std::string& file, const std::string& method,
              std::optional<double> lambda_flag, const OutputOpts& opts, std::ostream& out) {
    return run_guarded(out, [&]() {
        ProblemFile pf = ProblemFile::load(file);
        ReducedBVP bvp = pf.to_bvp();
        std::optional<double> lambda = lambda_flag ? lambda_flag : pf.lambda;
        if (!lambda)
            throw ValidationError("lambda required (give --lambda or a \"lambda\" field)");

        std::vector<SolveReport> reports;
        if (method == "picard") {
            reports.push_back(picard_solve(bvp, *lambda, pf.picard));
        } else if (method == "shoot") {
            reports = shoot_solve(bvp, *lambda, pf.shoot);
            if (reports.empty()) {
                out << "no positive solution bracketed by the slope scan\n";
                return kExitNoConverge;
            }
        } else {
            throw ValidationError("unknown method \"" + method +
                                  "\" (expected picard or shoot)");
        }

        bool ok = false;
        std::vector<SvgSeries> series;
        for (std::size_t k = 0; k < reports.size(); ++k) {
            const SolveReport& rep = reports[k];
            if (reports.size() > 1)
                out << "--- solution " << (k + 1) << " of " << reports.size() << " ---\n";
            print_solve_report(rep, out);
            VerificationReport ver = verify_solution(rep.u, rep.lambda, bvp);
            print_verification(ver, out);
            ok = ok || (rep.converged && ver.overall);

            SvgSeries s{"u (solution " + std::to_string(k + 1) + ")", {}, {}};
            const std::size_t stride = std::max<std::size_t>(1, rep.u.size() / 1024);
            for (std::size_t i = 0; i < rep.u.size(); i += stride) {
                s.x.push_back(rep.u.node(i));
                s.y.push_back(rep.u[i]);
            }
            series.push_back(std::move(s));
        }

        const GridFunction& u = reports.front().u;
        std::string csv = "t,u\n";
        for (std::size_t i = 0; i < u.size(); ++i)
            csv += f17(u.node(i)) + "," + f17(u[i]) + "\n";
        maybe_svg(opts, out, "solution", "t", "u(t)", series);
        emit_csv(opts, out, csv);
        return ok ? kExitOk : kExitNoConverge;
    });
}

int cmd_sweep(const std::string& file, double lambda_from, double lambda_to, int steps,
              bool log_spacing, const std::string& method, const OutputOpts& opts,
              std::ostream& out) {
    return run_guarded(out, [&]() {
        if (steps < 1)
            throw ValidationError("sweep: steps must be >= 1");
        if (!(lambda_from > 0.0) || !(lambda_to > 0.0))
            throw ValidationError("sweep: lambdas must be positive");
        if (steps > 1 && !(lambda_to >= lambda_from))
            throw ValidationError("sweep: requires lambda-from <= lambda-to");

        ProblemFile pf = ProblemFile::load(file);
        ReducedBVP bvp = pf.to_bvp();

        std::vector<double> lambdas(steps);
        for (int i = 0; i < steps; ++i) {
            if (steps == 1) {
                lambdas[i] = lambda_from;
            } else if (log_spacing) {
                lambdas[i] = lambda_from *
                             std::pow(lambda_to / lambda_from,
                                      static_cast<double>(i) / (steps - 1));
            } else {
                lambdas[i] = lambda_from + (lambda_to - lambda_from) *
                                               static_cast<double>(i) / (steps - 1);
            }
        }

        SweepConfig cfg;
        cfg.picard = pf.picard;
        cfg.shoot = pf.shoot;
        if (method == "picard")
            cfg.method = SolveMethod::Picard;
        else if (method == "shoot")
            cfg.method = SolveMethod::Shoot;
        else
            throw ValidationError("unknown method \"" + method + "\"");

        auto rows = sweep(bvp, lambdas, cfg);
        std::size_t max_solutions = 0;
        for (const auto& row : rows)
            max_solutions = std::max(max_solutions, row.sup_norms.size());

        std::string csv = "lambda,n_solutions";
        for (std::size_t k = 1; k <= max_solutions; ++k)
            csv += ",sup_norm_" + std::to_string(k);
        for (std::size_t k = 1; k <= max_solutions; ++k)
            csv += ",min_quarter_" + std::to_string(k);
        csv += ",error\n";
        SvgSeries series{"sup_norm_1", {}, {}};
        for (const auto& row : rows) {
            csv += f17(row.lambda) + "," + std::to_string(row.n_solutions);
            for (std::size_t k = 0; k < max_solutions; ++k)
                csv += "," + (k < row.sup_norms.size() ? f17(row.sup_norms[k]) : "");
            for (std::size_t k = 0; k < max_solutions; ++k)
                csv += "," + (k < row.min_quarters.size() ? f17(row.min_quarters[k]) : "");
            csv += "," + row.error + "\n";
            if (!row.sup_norms.empty()) {
                series.x.push_back(row.lambda);
                series.y.push_back(row.sup_norms[0]);
            }
        }
        maybe_svg(opts, out, "sweep", "lambda", "sup_norm", {series});
        emit_csv(opts, out, csv);
        return kExitOk;
    });
}

int cmd_examples(const std::string& id, std::ostream& out) {
    return run_guarded(out, [&]() {
        if (id == "1.1") return examples_11(out);
        if (id == "1.2") return examples_12(out);
        if (id == "1.3") return examples_13(out);
        if (id == "1.4") return examples_14(out);
        if (id == "4.1") return examples_41(out);
        if (id == "4.2") return examples_42(out);
        throw ValidationError("unknown example id \"" + id +
                              "\" (expected 1.1, 1.2, 1.3, 1.4, 4.1 or 4.2)");
    });
}

int cmd_verify(const std::string& file, const std::string& solution_csv,
               std::optional<double> lambda_flag, std::ostream& out) {
    return run_guarded(out, [&]() {
        ProblemFile pf = ProblemFile::load(file);
        ReducedBVP bvp = pf.to_bvp();
        std::optional<double> lambda = lambda_flag ? lambda_flag : pf.lambda;
        if (!lambda)
            throw ValidationError("lambda required (give --lambda or a \"lambda\" field)");

        auto rows = read_solution_csv(solution_csv);
        const std::size_t n = rows.size();
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double expected_t = static_cast<double>(i) / (n - 1);
            if (std::fabs(rows[i].first - expected_t) > 1e-9)
                throw ValidationError("solution csv: t column must be the uniform grid "
                                      "i/(n-1)");
            values[i] = rows[i].second;
        }

        VerificationReport rep = verify_solution(GridFunction(std::move(values)), *lambda, bvp);
        print_verification(rep, out);
        return rep.overall ? kExitOk : kExitNoConverge;
    });
}

} // namespace abvp::cli
