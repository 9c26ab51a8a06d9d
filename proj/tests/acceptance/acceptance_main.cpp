// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include "greensphere/chart.hpp"
#include "greensphere/query.hpp"
#include "greensphere/verify.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace greensphere;

namespace {

int failures = 0;

class Criterion {
public:
    Criterion(int number, std::string what)
        : number_(number), what_(std::move(what)), start_(std::chrono::steady_clock::now()) {}

    void finish(bool ok, const std::string& detail = "") {
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start_)
                           .count();
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number_ << ": " << what_ << " ["
                  << elapsed << " ms]";
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << "\n" << std::flush;
        if (!ok) ++failures;
    }
    void finish(const Report& report) {
        std::string detail = std::to_string(report.checks) + " checks";
        if (!report.ok()) {
            detail += "; first failure: " + report.failures.front() + " (" +
                      std::to_string(report.failures.size()) + " total)";
        }
        finish(report.ok(), detail);
    }

private:
    int number_;
    std::string what_;
    std::chrono::steady_clock::time_point start_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::string golden_dir = argc > 1 ? argv[1] : "tests/golden";
    Engine engine{Params{}};

    {
        Criterion c(1, "E2 closed form matches modlin cohomology, |s|,|c| <= 40, n <= 6");
        c.finish(verify_e2_window(engine.ko(), 40, 6));
    }
    {
        Criterion c(2, "descent reproduces every table 1 group, |s|,|c| <= 24");
        Report r = engine.green().verify_hfpss(24);
        // the worked invariant-factor example pi_{7,3} = Z/4 + Z/32
        ++r.checks;
        if (!(engine.green().group(7, 3).module.torsion == std::vector<int>{2, 5}))
            r.fail("pi_{7,3} != Z/4 + Z/32");
        for (long long a = -3; a <= 3 && r.ok(); ++a)
            for (long long b = -3; b <= 3; ++b) {
                if (a == 0 || b == 0) continue;
                ++r.checks;
                if (engine.green().group(8 * a - 1, 4 * b - 1).module.torsion_log2_order() !=
                    j_exp(2 * a).value() + j_exp(b).value()) {
                    r.fail("|E_{2a,b}| != |S_{8a-1}| |S_{4b-1}| at a=" + std::to_string(a) +
                           ", b=" + std::to_string(b));
                    break;
                }
            }
        c.finish(r);
    }
    {
        Criterion c(3, "relation-table closure and lemma instances, parameters in [-2,2]");
        Report r = verify_closure(engine.green(), 2);
        Report lemmas = verify_product_lemmas(engine.green(), 2);
        r.checks += lemmas.checks;
        for (const auto& f : lemmas.failures) r.fail(f);
        c.finish(r);
    }
    {
        Criterion c(4, "Mackey axioms over |s|,|c| <= 24");
        c.finish(engine.green().verify_axioms(24));
    }
    {
        Criterion c(5, "classical cross-checks: gamma orders, divisibility, Picard");
        c.finish(verify_classical(engine, 16, 12, 12));
    }
    {
        Criterion c(6, "restriction/unit coherence and the classical mu^3 extension");
        c.finish(verify_restriction_unit(engine.green(), 2));
    }
    {
        Criterion c(7, "chart regression against the golden files");
        struct Fig {
            const char* name;
            ChartSpec spec;
        };
        std::vector<Fig> figures = {
            {"chart_ku.txt", {"ku", -4, 4, -4, 4, "text"}},
            {"chart_e2.txt", {"e2", -4, 4, -4, 4, "text"}},
            {"chart_ko.txt", {"ko", -4, 4, -4, 4, "text"}},
            {"chart_sphere.txt", {"sphere", 6, 13, 7, 14, "text"}},
        };
        bool ok = true;
        std::string detail;
        for (const auto& fig : figures) {
            std::string once = chart_text(engine, fig.spec);
            std::string twice = chart_text(engine, fig.spec);
            if (once != twice) {
                ok = false;
                detail = std::string(fig.name) + " is not deterministic";
                break;
            }
            std::string golden = read_file(golden_dir + "/" + fig.name);
            if (golden.empty()) {
                ok = false;
                detail = std::string("missing golden file ") + fig.name;
                break;
            }
            if (golden != once) {
                ok = false;
                detail = std::string("chart differs from golden ") + fig.name;
                break;
            }
        }
        c.finish(ok, detail);
    }

    std::cout << (failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << " (" << failures
              << " failing criteria)\n";
    return failures == 0 ? 0 : 1;
}
