#include "greensphere/chart.hpp"
#include "greensphere/query.hpp"
#include "greensphere/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace greensphere;

namespace {

int run_verify(const Engine& engine, int window, const std::string& suites) {
    auto wants = [&](const std::string& name) {
        return suites == "all" || suites.find(name) != std::string::npos;
    };
    bool failed = false;
    auto show = [&](const Report& report, const std::string& label) {
        std::cout << report.summary(label) << "\n";
        for (const auto& f : report.failures) std::cout << "  FAIL " << f << "\n";
        failed = failed || !report.ok();
    };
    if (wants("e2")) show(verify_e2_window(engine.ko(), window, 6), "e2");
    if (wants("d3")) show(verify_d3_window(engine.ko(), window, 12), "d3");
    if (wants("hfpss")) show(engine.green().verify_hfpss(window), "hfpss");
    if (wants("axioms")) show(engine.green().verify_axioms(window), "axioms");
    if (wants("divisibility")) show(verify_classical(engine, 16, 12, 12), "divisibility");
    if (wants("closure")) {
        show(verify_closure(engine.green(), 2), "closure");
        show(verify_product_lemmas(engine.green(), 2), "lemmas");
        show(verify_restriction_unit(engine.green(), 2), "restriction-unit");
    }
    return failed ? 1 : 0;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"greensphere: the RO(C2)-graded Green functor of the K(1)-local sphere"};
    app.require_subcommand(1);

    int precision = 32;
    long long k = 3;
    std::string tables_path;
    std::string format = "text";
    std::string out_path;
    app.add_option("--precision", precision, "2-adic working precision N (coefficients mod 2^N)")
        ->capture_default_str();
    app.add_option("--k", k, "Adams operation parameter, must be ±3 mod 8")
        ->capture_default_str();
    app.add_option("--tables", tables_path,
                   "table data file (default: GREENSPHERE_TABLES or the embedded copy)");
    app.add_option("--format", format, "output format: text, json or svg")
        ->capture_default_str();
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    auto* cmd_group = app.add_subcommand("group", "print pi_{s,c} with its named basis");
    long long gs = 0, gc = 0;
    std::string ring = "sphere";
    cmd_group->add_option("s", gs, "stem")->required();
    cmd_group->add_option("c", gc, "coweight (twist for --ring classical)")->required();
    cmd_group->add_option("--ring", ring, "sphere, ku, ko or classical")->capture_default_str();

    auto* cmd_mul = app.add_subcommand("mul", "normalize a product expression");
    std::string mul_expr;
    cmd_mul->add_option("expr", mul_expr, "e.g. \"w[0]*w[0]*eta[1]\"")->required();

    auto* cmd_res = app.add_subcommand("res", "restriction to the nonequivariant sphere");
    std::string res_expr;
    cmd_res->add_option("expr", res_expr)->required();

    auto* cmd_tr = app.add_subcommand("tr", "transfer tr_c from the nonequivariant sphere");
    long long tr_c = 0;
    std::string tr_expr;
    cmd_tr->add_option("c", tr_c, "target coweight")->required();
    cmd_tr->add_option("expr", tr_expr, "classical element, e.g. \"mu[1]\"")->required();

    auto* cmd_unit = app.add_subcommand("unit", "unit map from the nonequivariant sphere");
    std::string unit_expr;
    cmd_unit->add_option("expr", unit_expr)->required();

    auto* cmd_chart = app.add_subcommand("chart", "draw a bidegree chart");
    std::string chart_ring = "sphere";
    int window = 8;
    std::vector<long long> box;
    cmd_chart->add_option("--ring", chart_ring, "ku, e2, ko, sphere or mackey")
        ->capture_default_str();
    cmd_chart->add_option("--window", window, "symmetric window half-width")
        ->capture_default_str();
    cmd_chart->add_option("--box", box, "explicit window: smin smax cmin cmax")->expected(4);

    auto* cmd_verify = app.add_subcommand("verify", "run the verification pipeline");
    int vwindow = 8;
    std::string suites = "all";
    cmd_verify->add_option("--window", vwindow, "bidegree window half-width")
        ->capture_default_str();
    cmd_verify->add_option("--suites", suites,
                           "all or a comma list of e2,d3,hfpss,axioms,divisibility,closure")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        Params params;
        params.precision = precision;
        params.k = k;
        Engine engine(params, tables_path);

        if (*cmd_group) {
            QueryResult q = group_query(engine, ring, gs, gc);
            emit(format == "json" ? q.to_json() + "\n" : q.text(), out_path);
            return 0;
        }
        if (*cmd_mul) {
            GreenElement x = eval_green_expr(engine.green(), mul_expr);
            if (format == "json") {
                emit(element_query(engine.green(), x).to_json() + "\n", out_path);
            } else {
                emit(element_str(engine.green(), x) + "\n", out_path);
            }
            return 0;
        }
        if (*cmd_res) {
            SElement y = engine.green().restriction(eval_green_expr(engine.green(), res_expr));
            if (format == "json") {
                emit(selement_query(engine.sphere(), y).to_json() + "\n", out_path);
            } else {
                emit(element_str(engine.sphere(), y) + "\n", out_path);
            }
            return 0;
        }
        if (*cmd_tr) {
            SElement alpha = eval_s_expr(engine.sphere(), tr_expr);
            GreenElement y = engine.green().transfer(tr_c, alpha);
            if (format == "json") {
                emit(element_query(engine.green(), y).to_json() + "\n", out_path);
            } else {
                emit(element_str(engine.green(), y) + "\n", out_path);
            }
            return 0;
        }
        if (*cmd_unit) {
            SElement alpha = eval_s_expr(engine.sphere(), unit_expr);
            GreenElement y = engine.green().unit_map(alpha);
            if (format == "json") {
                emit(element_query(engine.green(), y).to_json() + "\n", out_path);
            } else {
                emit(element_str(engine.green(), y) + "\n", out_path);
            }
            return 0;
        }
        if (*cmd_chart) {
            ChartSpec spec;
            spec.ring = chart_ring;
            spec.format = format;
            if (!box.empty()) {
                spec.smin = box[0];
                spec.smax = box[1];
                spec.cmin = box[2];
                spec.cmax = box[3];
            } else {
                spec.smin = spec.cmin = -window;
                spec.smax = spec.cmax = window;
            }
            emit(render_chart(engine, spec), out_path);
            return 0;
        }
        if (*cmd_verify) return run_verify(engine, vwindow, suites);
    } catch (const TableParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ExprError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
