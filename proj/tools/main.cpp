#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "harmlens/census.hpp"
#include "harmlens/critical_curves.hpp"
#include "harmlens/errors.hpp"
#include "harmlens/io.hpp"
#include "harmlens/lensing.hpp"
#include "harmlens/solver.hpp"
#include "harmlens/verify.hpp"

namespace {

using harmlens::Cx;
using harmlens::Json;

void emit(const Json& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << harmlens::dump_pretty(payload);
    } else {
        harmlens::write_json_file(out_path, payload);
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw harmlens::ParseError("cannot open " + path + " for writing");
    out << text;
}

struct CommonSolveFlags {
    double tol_accept = 1e-8;
    double root_tol = 1e-13;

    harmlens::SolveOptions options() const {
        harmlens::SolveOptions opts;
        opts.tol_accept = tol_accept;
        opts.root_options.converge_rel = root_tol;
        return opts;
    }
};

struct LensSelection {
    std::string config_path;
    int polygon_n = 0;
    double rho = 1.0;
    std::vector<double> source_xy;

    harmlens::LensInput resolve() const {
        harmlens::LensInput input;
        if (!config_path.empty()) {
            input = harmlens::lens_input_from_json(harmlens::load_json_file(config_path));
        } else if (polygon_n > 0) {
            input.config = harmlens::polygon_lens(polygon_n, rho);
        } else {
            throw harmlens::ParseError("provide --config FILE or --polygon N");
        }
        if (!source_xy.empty()) input.source = Cx(source_xy[0], source_xy[1]);
        return input;
    }
};

int run_solve_rational(const std::string& rational_path, const CommonSolveFlags& flags,
                       const std::string& out_path) {
    const harmlens::Rational r =
        harmlens::rational_from_json(harmlens::load_json_file(rational_path));
    const harmlens::SolveReport report = harmlens::solve_zeros(r, flags.options());
    emit(harmlens::to_json(report), out_path);
    return 0;
}

int run_solve_lens(const LensSelection& selection, const CommonSolveFlags& flags,
                   const std::string& out_path) {
    const harmlens::LensInput input = selection.resolve();
    if (input.extended) {
        const harmlens::ExtendedImageSet images = harmlens::find_images_extended(
            input.blobs, input.config.gamma, input.config.sigma_sign, input.source,
            flags.options());
        emit(harmlens::to_json(images), out_path);
    } else {
        const harmlens::ImageSet images =
            harmlens::find_images(input.config, input.source, flags.options());
        emit(harmlens::to_json(images), out_path);
    }
    return 0;
}

int run_trace_critical(const std::string& rational_path, const LensSelection& selection,
                       const std::vector<double>& bbox_vals, int resolution,
                       const CommonSolveFlags& flags, const std::string& svg_path,
                       const std::string& out_path) {
    std::optional<harmlens::Rational> r;
    if (!rational_path.empty()) {
        r = harmlens::rational_from_json(harmlens::load_json_file(rational_path));
    } else {
        const harmlens::LensInput input = selection.resolve();
        r = harmlens::lens_to_rational(input.config, input.source);
    }
    const harmlens::SolveReport report = harmlens::solve_zeros(*r, flags.options());
    harmlens::Bbox bbox = harmlens::default_bbox(report);
    if (!bbox_vals.empty()) {
        bbox = {bbox_vals[0], bbox_vals[1], bbox_vals[2], bbox_vals[3]};
    }
    const harmlens::CurveSet curves = harmlens::trace_critical_set(*r, bbox, resolution);
    if (!svg_path.empty()) {
        write_text_file(svg_path, harmlens::curve_set_svg(curves, &report));
    }
    emit(harmlens::to_json(curves), out_path);
    return 0;
}

int run_census(const std::vector<int>& degrees, int trials, std::uint64_t seed, int workers,
               const std::string& out_path) {
    harmlens::CensusOptions opts;
    if (!degrees.empty()) opts.degrees = degrees;
    opts.trials = trials;
    opts.seed = seed;
    opts.workers = workers;
    const harmlens::CensusResult census = harmlens::run_bound_census(opts, stderr);
    emit(harmlens::to_json(census), out_path);
    if (!census.all_within_bounds()) {
        for (const harmlens::DegreeCensus& d : census.per_degree) {
            for (const harmlens::ViolationReproducer& v : d.violations) {
                std::cerr << "bound violation reproducer:\n"
                          << harmlens::dump_pretty(
                                 Json{{"seed", v.seed},
                                      {"degree", v.degree},
                                      {"trial", v.trial},
                                      {"function", harmlens::to_json(v.function)},
                                      {"zero_count", v.zero_count},
                                      {"n_plus", v.n_plus}});
            }
        }
        return 5;
    }
    return 0;
}

int run_verify_example(bool skip_census, double tol, int resolution,
                       const std::string& out_path) {
    harmlens::VerifyOptions opts;
    opts.skip_census = skip_census;
    opts.tol = tol;
    opts.resolution = resolution;
    const harmlens::VerifyReport report = harmlens::verify_reference_example(opts);
    for (const harmlens::CheckResult& c : report.checks) {
        std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    }
    if (!out_path.empty()) harmlens::write_json_file(out_path, harmlens::to_json(report));
    return report.all_ok() ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Zero finding and classification for conj(r(z)) - z, with the "
                 "gravitational-lens front end"};
    app.require_subcommand(1);

    CommonSolveFlags flags;
    std::string rational_path;
    std::string out_path;
    std::string svg_path;
    LensSelection selection;
    std::vector<double> bbox_vals;
    int resolution = 512;
    std::vector<int> degrees;
    int trials = 500;
    std::uint64_t seed = 0;
    int workers = 0;
    bool skip_census = false;

    CLI::App* solve_rational = app.add_subcommand(
        "solve-rational", "Find and classify all zeros of conj(r(z)) - z");
    solve_rational->add_option("--rational", rational_path, "Rational function JSON file")
        ->required();
    solve_rational->add_option("--tol-accept", flags.tol_accept, "Zero acceptance tolerance");
    solve_rational->add_option("--root-tol", flags.root_tol, "Root iteration tolerance");
    solve_rational->add_option("--out", out_path, "Write the report JSON here");

    CLI::App* solve_lens =
        app.add_subcommand("solve-lens", "Solve the n-point lens equation for a source");
    solve_lens->add_option("--config", selection.config_path, "Lens configuration JSON file");
    solve_lens->add_option("--polygon", selection.polygon_n,
                           "Regular polygon of N equal masses instead of --config");
    solve_lens->add_option("--rho", selection.rho, "Polygon circumradius");
    solve_lens->add_option("--source", selection.source_xy, "Source position X,Y")
        ->delimiter(',')
        ->expected(2);
    solve_lens->add_option("--tol-accept", flags.tol_accept, "Image acceptance tolerance");
    solve_lens->add_option("--root-tol", flags.root_tol, "Root iteration tolerance");
    solve_lens->add_option("--out", out_path, "Write the image set JSON here");

    CLI::App* trace = app.add_subcommand(
        "trace-critical", "Trace the critical set |r'(z)| = 1 and its caustic image");
    trace->add_option("--rational", rational_path, "Rational function JSON file");
    trace->add_option("--config", selection.config_path, "Lens configuration JSON file");
    trace->add_option("--source", selection.source_xy, "Source position X,Y")
        ->delimiter(',')
        ->expected(2);
    trace->add_option("--bbox", bbox_vals, "Window XMIN,XMAX,YMIN,YMAX")
        ->delimiter(',')
        ->expected(4);
    trace->add_option("--res", resolution, "Grid resolution");
    trace->add_option("--svg", svg_path, "Write an SVG rendering here");
    trace->add_option("--out", out_path, "Write the polyline JSON here");

    CLI::App* census = app.add_subcommand(
        "census", "Random-function census of the zero-count bounds");
    census->add_option("--degrees", degrees, "Degrees to sample")->delimiter(',');
    census->add_option("--trials", trials, "Trials per degree");
    census->add_option("--seed", seed, "Census seed");
    census->add_option("--workers", workers, "Worker threads (0 = hardware)");
    census->add_option("--out", out_path, "Write the census JSON here");

    CLI::App* verify = app.add_subcommand(
        "verify-example", "Check the embedded extremal quadratic against its known solution");
    verify->add_flag("--skip-census", skip_census, "Skip the critical-orbit checks");
    verify->add_option("--tol-accept", flags.tol_accept, "Location matching tolerance");
    verify->add_option("--res", resolution, "Critical-set trace resolution");
    verify->add_option("--out", out_path, "Write the check report JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve_rational->parsed()) {
            return run_solve_rational(rational_path, flags, out_path);
        }
        if (solve_lens->parsed()) {
            return run_solve_lens(selection, flags, out_path);
        }
        if (trace->parsed()) {
            if (rational_path.empty() == selection.config_path.empty()) {
                throw harmlens::ParseError("provide exactly one of --rational or --config");
            }
            return run_trace_critical(rational_path, selection, bbox_vals, resolution, flags,
                                      svg_path, out_path);
        }
        if (census->parsed()) {
            return run_census(degrees, trials, seed, workers, out_path);
        }
        if (verify->parsed()) {
            return run_verify_example(skip_census, flags.tol_accept, resolution, out_path);
        }
    } catch (const harmlens::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const harmlens::HypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const harmlens::NotApplicableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const harmlens::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
