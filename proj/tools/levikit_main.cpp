#include "levikit/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"levikit: exact analysis of plane-curve pencils, Segre varieties and "
                 "Levi-flat hypersurfaces"};
    std::string input_path;
    std::string format = "json";
    std::string out_path;
    unsigned long seed = 0;
    int samples = 0;
    std::string tol;
    int truncation = -1;

    app.add_option("input", input_path, "JSON request file (single request or batch array)")
        ->required();
    auto* seed_opt = app.add_option("--seed", seed, "generator seed (overrides the input file)");
    auto* samples_opt =
        app.add_option("--samples", samples, "sample count for numeric certificates");
    auto* tol_opt = app.add_option("--tol", tol, "tolerance, exact rational or decimal string");
    auto* trunc_opt = app.add_option("--truncation", truncation, "series truncation override");
    app.add_option("--format", format, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", out_path, "write the report to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;
    std::string rendered;
    try {
        auto requests = levikit::parse_input_file(input_path);
        for (auto& req : requests) {
            if (seed_opt->count() > 0) req.options.seed = seed;
            if (samples_opt->count() > 0) req.options.samples = samples;
            if (trunc_opt->count() > 0) req.options.truncation = truncation;
            if (tol_opt->count() > 0) {
                auto q = levikit::parse_rational_or_decimal(tol);
                if (!q || *q <= 0) {
                    std::cerr << "error: malformed --tol value '" << tol << "'\n";
                    return 3;
                }
                req.options.tol = *q;
            }
        }
        std::vector<levikit::Report> reports;
        for (const auto& req : requests) {
            reports.push_back(levikit::run_request(req));
            if (reports.back().mathematical_rejection) exit_code = std::max(exit_code, 2);
        }
        rendered = levikit::emit_reports(reports, format);
    } catch (const levikit::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const levikit::internal_error& e) {
        std::cerr << "internal error (oracle disagreement): " << e.what() << "\n";
        return 4;
    } catch (const levikit::math_error& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 2;
    }

    if (out_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return 3;
        }
        out << rendered;
    }
    auto t1 = std::chrono::steady_clock::now();
    std::cerr << "elapsed: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
              << " ms\n";
    return exit_code;
}
