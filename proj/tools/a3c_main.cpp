#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "a3c/report.hpp"

namespace {

a3c::Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return a3c::Rational(std::stoll(text));
    return a3c::Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

void print_checks(const a3c::report::Report& rep) {
    for (const auto& c : rep.checks) {
        std::cout << "[" << c.status << "] " << c.id;
        if (!c.residual.empty() && c.status != "pass") std::cout << "  (" << c.residual << ")";
        std::cout << "\n";
    }
}

int write_json(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 2;
    }
    out << j.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification engine for almost 3-contact metric structures on Lie groups"};
    app.require_subcommand(1);

    auto* check = app.add_subcommand("check", "run verification suites on an .alg file");
    std::string file;
    std::vector<std::string> suites;
    std::string deform_s, deform_c;
    std::vector<std::string> evals;
    std::string json_path;
    check->add_option("file", file, ".alg input file")->required();
    check->add_option("--suite", suites, "classify|connection|curvature|deform|g2|s7|all")
        ->check(CLI::IsMember({"classify", "connection", "curvature", "deform", "g2", "s7", "all"}));
    check->add_option("--deform-s", deform_s, "deformation scale s (a = s^2), exact rational");
    check->add_option("--deform-c", deform_c, "deformation scale c, exact rational");
    check->add_option("--eval", evals, "numeric cross-evaluation assignments k=v");
    check->add_option("--json", json_path, "write the JSON report here");

    auto* s7cmd = app.add_subcommand("s7", "pointwise Cartan-Schouten checks on the 7-sphere");
    int points = 4;
    std::string s7_json;
    s7cmd->add_option("--points", points, "number of exact rational unit points")
        ->check(CLI::Range(1, 8));
    s7cmd->add_option("--json", s7_json, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (s7cmd->parsed()) {
            a3c::report::Report rep;
            rep.input_digest = a3c::report::detail::Sha256::hex("s7:" + std::to_string(points));
            auto t0 = std::chrono::steady_clock::now();
            // classification block from the first snapshot point
            rep.classification =
                a3c::classify(a3c::s7_structure_at(a3c::report::default_s7_points(1)[0]).structure);
            a3c::report::run_s7_suite(rep, points);
            rep.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            print_checks(rep);
            if (!s7_json.empty()) {
                int rc = write_json(s7_json, a3c::report::to_json(rep, a3c::Assignment{}));
                if (rc != 0) return rc;
            }
            return rep.all_passed() ? 0 : 1;
        }

        std::ifstream in(file);
        if (!in) {
            std::cerr << "cannot read " << file << "\n";
            return 2;
        }
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

        a3c::dsl::AlgebraDoc doc;
        try {
            doc = a3c::dsl::parse(text);
        } catch (const a3c::dsl::SyntaxError& e) {
            std::cerr << file << ": " << e.what() << "\n";
            return 2;
        }

        a3c::report::RunOptions opt;
        if (!suites.empty()) opt.suites = suites;
        if (!deform_s.empty() || !deform_c.empty()) {
            a3c::DeformParams p;
            if (!deform_s.empty()) p.s = a3c::Scalar(parse_rational(deform_s));
            if (!deform_c.empty()) p.c = a3c::Scalar(parse_rational(deform_c));
            opt.deform = p;
        }
        for (const auto& kv : evals) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) {
                std::cerr << "--eval expects k=v, got " << kv << "\n";
                return 2;
            }
            opt.eval_at.set(kv.substr(0, eq), parse_rational(kv.substr(eq + 1)));
        }
        if (!opt.eval_at.values().empty()) {
            a3c::ParamSet ps;
            for (const auto& p : doc.params) ps.declare(p);
            std::string why;
            if (!opt.eval_at.respects(ps, &why)) {
                std::cerr << "--eval: " << why << "\n";
                return 2;
            }
        }

        auto t0 = std::chrono::steady_clock::now();
        a3c::report::Report rep;
        try {
            rep = a3c::report::run_checks(doc, text, opt);
        } catch (const a3c::dsl::JacobiFailure& e) {
            std::cerr << file << ": " << e.what() << "\n";
            return 2;
        }
        rep.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        print_checks(rep);
        if (!json_path.empty()) {
            int rc = write_json(json_path, a3c::report::to_json(rep, opt.eval_at));
            if (rc != 0) return rc;
        }
        return rep.all_passed() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
