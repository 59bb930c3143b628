#include "abvp/problem.hpp"

#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "json.hpp"

namespace abvp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ValidationError("problem file: " + where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.contains(it.key()))
            fail(where, "unknown key \"" + it.key() + "\"");
}

double number_at(const json& obj, const std::string& where, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_number())
        fail(where, "\"" + key + "\" must be a number");
    return v.get<double>();
}

std::optional<double> opt_number(const json& obj, const std::string& where,
                                 const std::string& key) {
    if (!obj.contains(key)) return std::nullopt;
    return number_at(obj, where, key);
}

std::string string_at(const json& obj, const std::string& where, const std::string& key) {
    const json& v = obj.at(key);
    if (!v.is_string())
        fail(where, "\"" + key + "\" must be a string");
    return v.get<std::string>();
}

Expr expr_at(const json& obj, const std::string& where, const std::string& key,
             VarSet allowed) {
    const std::string src = string_at(obj, where, key);
    try {
        return Expr::parse(src, allowed);
    } catch (const ParseError& e) {
        fail(where + "." + key, e.what());
    }
}

void read_solver_block(const json& solver, ProblemFile& out) {
    const std::string where = "solver";
    reject_unknown_keys(solver, where, {"picard", "shoot", "quadrature", "eigen", "fd_n"});

    if (solver.contains("picard")) {
        const json& p = solver.at("picard");
        reject_unknown_keys(p, "solver.picard", {"n", "damping", "tol", "max_iter", "u0_sup"});
        if (auto v = opt_number(p, "solver.picard", "n")) out.picard.grid_n = std::size_t(*v);
        if (auto v = opt_number(p, "solver.picard", "damping")) out.picard.damping = *v;
        if (auto v = opt_number(p, "solver.picard", "tol")) out.picard.tol = *v;
        if (auto v = opt_number(p, "solver.picard", "max_iter")) out.picard.max_iter = int(*v);
        if (auto v = opt_number(p, "solver.picard", "u0_sup")) out.picard.u0_sup = *v;
    }
    if (solver.contains("shoot")) {
        const json& s = solver.at("shoot");
        reject_unknown_keys(s, "solver.shoot",
                            {"slope_lo", "slope_hi", "n_scan", "tol", "steps"});
        if (auto v = opt_number(s, "solver.shoot", "slope_lo")) out.shoot.slope_lo = *v;
        if (auto v = opt_number(s, "solver.shoot", "slope_hi")) out.shoot.slope_hi = *v;
        if (auto v = opt_number(s, "solver.shoot", "n_scan")) out.shoot.n_scan = int(*v);
        if (auto v = opt_number(s, "solver.shoot", "tol")) out.shoot.tol = *v;
        if (auto v = opt_number(s, "solver.shoot", "steps")) out.shoot.rk4_steps = int(*v);
    }
    if (solver.contains("quadrature")) {
        const json& q = solver.at("quadrature");
        reject_unknown_keys(q, "solver.quadrature", {"panels", "points"});
        if (auto v = opt_number(q, "solver.quadrature", "panels"))
            out.quadrature.panel_count = int(*v);
        if (auto v = opt_number(q, "solver.quadrature", "points"))
            out.quadrature.points_per_panel = int(*v);
    }
    if (solver.contains("eigen")) {
        const json& e = solver.at("eigen");
        reject_unknown_keys(e, "solver.eigen", {"tol", "bracket_lo", "bracket_hi", "steps"});
        if (auto v = opt_number(e, "solver.eigen", "tol")) out.eigen.tol = *v;
        if (auto v = opt_number(e, "solver.eigen", "bracket_lo")) out.eigen.bracket_lo = *v;
        if (auto v = opt_number(e, "solver.eigen", "bracket_hi")) out.eigen.bracket_hi = *v;
        if (auto v = opt_number(e, "solver.eigen", "steps")) out.eigen.rk4_steps = int(*v);
    }
    if (auto v = opt_number(solver, where, "fd_n")) out.fd_n = int(*v);
}

} // namespace

ProblemFile ProblemFile::parse_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("problem file: ") + e.what());
    }
    if (!doc.is_object())
        fail("top level", "must be a JSON object");
    if (!doc.contains("mode"))
        fail("top level", "missing \"mode\"");

    static const std::set<std::string> common = {
        "mode", "b", "lambda", "c", "delta", "R", "r", "overrides", "solver"};

    ProblemFile out;
    const std::string mode = string_at(doc, "top level", "mode");
    if (mode == "annulus") {
        out.mode = Mode::Annulus;
        std::set<std::string> allowed = common;
        allowed.insert({"N", "r1", "r2", "h"});
        reject_unknown_keys(doc, "top level (mode=annulus)", allowed);
        for (const char* key : {"N", "r1", "r2", "h"})
            if (!doc.contains(key))
                fail("top level", std::string("mode \"annulus\" requires \"") + key + "\"");
        const double n_raw = number_at(doc, "top level", "N");
        if (n_raw != static_cast<int>(n_raw))
            fail("top level", "\"N\" must be an integer");
        AnnularProblem p{static_cast<int>(n_raw), number_at(doc, "top level", "r1"),
                         number_at(doc, "top level", "r2"),
                         expr_at(doc, "top level", "h", vars_ru)};
        p.validate();
        out.annulus = std::move(p);
    } else if (mode == "interval") {
        out.mode = Mode::Interval;
        std::set<std::string> allowed = common;
        allowed.insert({"q", "f"});
        reject_unknown_keys(doc, "top level (mode=interval)", allowed);
        if (!doc.contains("f"))
            fail("top level", "mode \"interval\" requires \"f\"");
        out.f_expr = expr_at(doc, "top level", "f", vars_tu);
        out.q_expr = doc.contains("q") ? expr_at(doc, "top level", "q", vars_t)
                                       : Expr::parse("1", vars_t);
    } else {
        fail("top level", "\"mode\" must be \"annulus\" or \"interval\"");
    }

    if (doc.contains("b"))
        out.b_expr = expr_at(doc, "top level", "b", vars_t);
    out.lambda = opt_number(doc, "top level", "lambda");
    out.c = opt_number(doc, "top level", "c");
    out.delta = opt_number(doc, "top level", "delta");
    out.R = opt_number(doc, "top level", "R");
    out.r = opt_number(doc, "top level", "r");

    if (doc.contains("overrides")) {
        const json& ov = doc.at("overrides");
        reject_unknown_keys(ov, "overrides", {"m", "M"});
        out.m_override = opt_number(ov, "overrides", "m");
        out.M_override = opt_number(ov, "overrides", "M");
    }
    if (doc.contains("solver"))
        read_solver_block(doc.at("solver"), out);
    return out;
}

ProblemFile ProblemFile::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("problem file: cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

ReducedBVP ProblemFile::to_bvp() const {
    if (mode == Mode::Annulus)
        return reduce(*annulus);
    return make_interval_bvp(*q_expr, *f_expr);
}

ScalarFn ProblemFile::b_fn() const {
    if (!b_expr)
        return [](double) { return 1.0; };
    auto b = std::make_shared<Expr>(*b_expr);
    return [b](double t) { return b->eval(Bindings::at_t(t)); };
}

} // namespace abvp
