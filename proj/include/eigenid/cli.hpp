#pragma once

#include <chrono>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigenid/io.hpp"
#include "eigenid/proof.hpp"
#include "eigenid/random.hpp"

namespace eigenid::cli {

// Exit-status contract: 0 all checks pass, 1 a mathematical check failed or
// the input is degenerate, 2 I/O or usage error.
inline int status_for(errc code) {
    switch (code) {
        case errc::no_convergence:
        case errc::degenerate_spectrum:
        case errc::degenerate_kernel:
        case errc::not_shifted:
        case errc::not_unitary:
        case errc::normalization_violated:
        case errc::reconstruction_defect:
            return 1;
        default:
            return 2;
    }
}

namespace detail {

using json = nlohmann::ordered_json;

constexpr int kReportVersion = 1;

struct ReportWriter {
    bool as_json = false;
    json doc;
    std::string text;

    ReportWriter(const std::string& command, bool json_mode) : as_json(json_mode) {
        doc["report_version"] = kReportVersion;
        doc["command"] = command;
        if (!json_mode)
            text += "report_version: " + std::to_string(kReportVersion) + "\ncommand: " +
                    command + "\n";
    }

    void field(const std::string& key, const std::string& value) {
        doc[key] = value;
        if (!as_json) text += key + ": " + value + "\n";
    }
    void field(const std::string& key, double value) {
        doc[key] = value;
        if (!as_json) text += key + ": " + fmt_double(value) + "\n";
    }
    void field(const std::string& key, std::size_t value) {
        doc[key] = value;
        if (!as_json) text += key + ": " + std::to_string(value) + "\n";
    }
    void raw_line(const std::string& line) {
        if (!as_json) text += line + "\n";
    }

    void emit(std::ostream& out) const {
        if (as_json)
            out << doc.dump(2) << "\n";
        else
            out << text;
    }
};

inline std::string grid_lines(const std::vector<std::vector<double>>& grid) {
    std::string s;
    for (const auto& row : grid) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) s += " ";
            s += fmt_double(row[j]);
        }
        s += "\n";
    }
    return s;
}

inline int cmd_verify(const std::string& input, double tol, bool as_json, std::ostream& out) {
    const HermitianMatrix a = load_matrix_file(input);
    const IdentityReport rep = verify_identity(a, tol);
    const IdentityCell& worst = rep.cells[rep.worst];

    ReportWriter w("verify", as_json);
    w.field("input", input);
    w.field("order", rep.order);
    w.field("tolerance", rep.tol);
    w.field("cells", rep.cells.size());
    w.field("max_normalized_gap", rep.max_norm_gap);
    if (as_json) {
        w.doc["worst_cell"] = {{"i", worst.i + 1},
                               {"j", worst.j + 1},
                               {"lhs", worst.lhs},
                               {"rhs", worst.rhs},
                               {"normalized_gap", worst.norm_gap}};
    } else {
        w.field("worst_cell_i", worst.i + 1);
        w.field("worst_cell_j", worst.j + 1);
        w.field("worst_cell_lhs", worst.lhs);
        w.field("worst_cell_rhs", worst.rhs);
        w.field("worst_cell_gap", worst.norm_gap);
    }
    w.field("result", std::string(rep.pass ? "pass" : "fail"));
    w.emit(out);
    return rep.pass ? 0 : 1;
}

inline int cmd_reconstruct(const std::string& input, double gap_tol, const std::string& output,
                           bool as_json, std::ostream& out) {
    const HermitianMatrix a = load_matrix_file(input);
    const EigenDecomposition d = eigh(a);
    const MinorSpectra minors = minor_spectra(a);
    const MagnitudeMatrix mm = reconstruct_magnitudes(d.eigenvalues, minors, gap_tol);
    const auto direct = squared_magnitudes(d.vectors);

    double deviation = 0.0;
    for (std::size_t i = 0; i < mm.order; ++i)
        for (std::size_t j = 0; j < mm.order; ++j)
            deviation = std::max(deviation, std::abs(mm.values[i][j] - direct[i][j]));

    double sum_defect = 0.0;
    for (std::size_t i = 0; i < mm.order; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < mm.order; ++j) {
            row += mm.values[i][j];
            col += mm.values[j][i];
        }
        sum_defect = std::max({sum_defect, std::abs(row - 1.0), std::abs(col - 1.0)});
    }

    const SpectralGapInfo gaps = gap_analysis(d.eigenvalues, gap_tol);
    ReportWriter w("reconstruct", as_json);
    w.field("input", input);
    w.field("order", mm.order);
    w.field("gap_tolerance", gap_tol);
    w.field("min_gap", gaps.min_gap);
    w.field("spectral_range", gaps.range);
    w.field("max_oracle_deviation", deviation);
    w.field("stochasticity_defect", sum_defect);
    if (as_json) w.doc["magnitudes"] = mm.values;
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) fail(errc::io_error, "cannot write '" + output + "'");
        f << grid_lines(mm.values);
        w.field("magnitudes_file", output);
    } else if (!as_json) {
        w.raw_line("magnitudes:");
        w.text += grid_lines(mm.values);
    }
    w.field("result", std::string("pass"));
    w.emit(out);
    return 0;
}

inline int cmd_prove(const std::string& input, std::size_t index_1based, double tol,
                     bool as_json, std::ostream& out) {
    const HermitianMatrix a = load_matrix_file(input);
    const std::size_t n = a.order();
    const std::size_t i = index_1based == 0 ? n - 1 : index_1based - 1;
    const ProofTrace trace = full_proof_trace(a, i, tol);

    ReportWriter w("prove", as_json);
    w.field("input", input);
    w.field("order", n);
    w.field("eigenvalue_index", trace.index + 1);
    w.field("shifted_eigenvalue", trace.shifted_eigenvalue);
    w.field("tolerance", tol);
    if (as_json) {
        json steps = json::array();
        for (const ProofStep& s : trace.steps)
            steps.push_back({{"name", s.name},
                             {"defect", s.defect},
                             {"tolerance", s.tolerance},
                             {"pass", s.pass}});
        w.doc["steps"] = steps;
    } else {
        for (const ProofStep& s : trace.steps) {
            w.raw_line("step." + s.name + ".defect: " + fmt_double(s.defect));
            w.raw_line("step." + s.name + ".tolerance: " + fmt_double(s.tolerance));
            w.raw_line("step." + s.name + ".pass: " + (s.pass ? "true" : "false"));
        }
    }
    w.field("result", std::string(trace.pass ? "pass" : "fail"));
    w.emit(out);
    return trace.pass ? 0 : 1;
}

inline int cmd_gen(std::size_t n, std::uint64_t seed, const std::string& ensemble,
                   const std::vector<double>& spec_values, const std::string& output,
                   std::ostream& out) {
    Ensemble e;
    if (ensemble == "real_symmetric")
        e = Ensemble::real_symmetric;
    else if (ensemble == "complex_hermitian")
        e = Ensemble::complex_hermitian;
    else if (ensemble == "prescribed_spectrum")
        e = Ensemble::prescribed_spectrum;
    else
        fail(errc::usage_error, "unknown ensemble '" + ensemble + "'");

    if (e != Ensemble::prescribed_spectrum && !spec_values.empty())
        fail(errc::usage_error, "--spectrum is only valid with the prescribed_spectrum ensemble");
    if (e == Ensemble::prescribed_spectrum && spec_values.empty())
        fail(errc::usage_error, "prescribed_spectrum requires --spectrum");

    std::size_t order = n;
    if (e == Ensemble::prescribed_spectrum) {
        if (order == 0)
            order = spec_values.size();
        else if (order != spec_values.size())
            fail(errc::usage_error, "--n disagrees with the spectrum length");
    } else if (order == 0) {
        fail(errc::usage_error, "--n is required for this ensemble");
    }

    const HermitianMatrix a = random_hermitian(order, seed, e, spec_values);
    if (output.empty()) {
        format_matrix_file(write_matrix(a), out);
    } else {
        save_matrix_file(a, output);
    }
    return 0;
}

inline int cmd_bench(const std::vector<std::size_t>& sizes, std::uint64_t seed,
                     std::size_t reps, bool as_json, std::ostream& out) {
    using clock = std::chrono::steady_clock;
    ReportWriter w("bench", as_json);
    w.field("seed", static_cast<std::size_t>(seed));
    w.field("repetitions", reps);
    json rows = json::array();
    if (!as_json) w.raw_line("columns: n reconstruct_ms eigh_ms max_deviation");

    for (std::size_t n : sizes) {
        std::vector<double> spec(n);
        for (std::size_t k = 0; k < n; ++k) spec[k] = static_cast<double>(k);
        const HermitianMatrix a = random_prescribed(spec, seed + n);

        std::vector<double> t_recon, t_eigh;
        double deviation = 0.0;
        for (std::size_t rep = 0; rep < std::max<std::size_t>(reps, 1); ++rep) {
            auto t0 = clock::now();
            const std::vector<double> lam = spectrum(a);
            const MinorSpectra minors = minor_spectra(a);
            const MagnitudeMatrix mm = reconstruct_magnitudes(lam, minors);
            auto t1 = clock::now();
            const EigenDecomposition d = eigh(a);
            const auto direct = squared_magnitudes(d.vectors);
            auto t2 = clock::now();
            t_recon.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            t_eigh.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    deviation = std::max(deviation, std::abs(mm.values[i][j] - direct[i][j]));
        }
        auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        const double mr = median(t_recon), me = median(t_eigh);
        if (as_json)
            rows.push_back({{"n", n},
                            {"reconstruct_ms", mr},
                            {"eigh_ms", me},
                            {"max_deviation", deviation}});
        else
            w.raw_line("row: " + std::to_string(n) + " " + fmt_double(mr) + " " +
                       fmt_double(me) + " " + fmt_double(deviation));
    }
    if (as_json) w.doc["rows"] = rows;
    w.field("result", std::string("ok"));
    w.emit(out);
    return 0;
}

}  // namespace detail

// Entry point shared by the binary and the tests. args excludes the program
// name; reports go to out, diagnostics to err.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hermitian eigenvector-eigenvalue identity toolkit"};
    app.require_subcommand(1);

    std::string input, output, ensemble = "real_symmetric";
    double tol = 1e-8, gap_tol = 1e-8;
    bool as_json = false;
    std::size_t n = 0, reps = 3, prove_index = 0;
    std::uint64_t seed = 0;
    std::vector<double> spec_values;
    std::vector<std::size_t> sizes;

    auto* verify = app.add_subcommand("verify", "Check the identity on every cell");
    verify->add_option("input", input, "matrix file")->required();
    verify->add_option("--tol", tol, "normalized gap tolerance (default 1e-8)");
    verify->add_flag("--json", as_json, "machine-readable report");

    auto* reconstruct =
        app.add_subcommand("reconstruct", "Rebuild |v_ij|^2 from spectra alone");
    reconstruct->add_option("input", input, "matrix file")->required();
    reconstruct->add_option("--gap-tol", gap_tol, "simplicity threshold (default 1e-8)");
    reconstruct->add_option("--output", output, "write the magnitude grid to this path");
    reconstruct->add_flag("--json", as_json, "machine-readable report");

    auto* prove = app.add_subcommand("prove", "Run the block-matrix proof checks");
    prove->add_option("input", input, "matrix file")->required();
    prove->add_option("--i", prove_index, "1-based ascending eigenvalue index (default n)");
    prove->add_option("--tol", tol, "product-check tolerance (default 1e-8)");
    prove->add_flag("--json", as_json, "machine-readable report");

    auto* gen = app.add_subcommand("gen", "Generate a seeded random Hermitian matrix file");
    gen->add_option("--n", n, "matrix order");
    gen->add_option("--seed", seed, "RNG seed (default 0)");
    gen->add_option("--ensemble", ensemble,
                    "real_symmetric | complex_hermitian | prescribed_spectrum");
    gen->add_option("--spectrum", spec_values, "comma-separated eigenvalues")->delimiter(',');
    gen->add_option("--output", output, "output path (default stdout)");

    auto* bench = app.add_subcommand("bench", "Time reconstruction against direct eigh");
    bench->add_option("--n", sizes, "comma-separated list of orders")->delimiter(',');
    bench->add_option("--seed", seed, "RNG seed (default 0)");
    bench->add_option("--reps", reps, "repetitions per order (default 3)");
    bench->add_flag("--json", as_json, "machine-readable report");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*verify) return detail::cmd_verify(input, tol, as_json, out);
        if (*reconstruct) return detail::cmd_reconstruct(input, gap_tol, output, as_json, out);
        if (*prove) return detail::cmd_prove(input, prove_index, tol, as_json, out);
        if (*gen) return detail::cmd_gen(n, seed, ensemble, spec_values, output, out);
        if (*bench) return detail::cmd_bench(sizes, seed, reps, as_json, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return status_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace eigenid::cli
