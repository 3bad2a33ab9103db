// Command-line front end: phantom generation, magnitude measurement,
// complexity evaluation, and the HIO / complexity-guided solvers, wired so the
// subcommands chain through files in the current directory by default
// (phantom -> measure -> hio/cgpr/compare).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cgpr/cgpr.hpp"

namespace {

using cgpr::ComplexField;
using cgpr::MagnitudeData;
using cgpr::SupportMask;

struct Extent {
    std::size_t rows = 0;
    std::size_t cols = 0;
};

// "N" (square) or "R,C".
Extent parse_extent(const std::string& text, const std::string& flag) {
    const auto bad = [&] {
        return std::invalid_argument(flag + ": expected N or ROWS,COLS, got '" + text + "'");
    };
    try {
        std::size_t pos = 0;
        const unsigned long long rows = std::stoull(text, &pos);
        if (pos == text.size()) return {rows, rows};
        if (text[pos] != ',') throw bad();
        std::size_t pos2 = 0;
        const unsigned long long cols = std::stoull(text.substr(pos + 1), &pos2);
        if (pos + 1 + pos2 != text.size()) throw bad();
        return {rows, cols};
    } catch (const std::invalid_argument&) {
        throw bad();
    }
}

// "glyph:TEXT", "checker:N", or "disk:F".
cgpr::PhantomPattern parse_pattern(const std::string& text) {
    if (text.rfind("glyph:", 0) == 0) return cgpr::GlyphPattern{text.substr(6)};
    try {
        if (text.rfind("checker:", 0) == 0) return cgpr::CheckerPattern{std::stoi(text.substr(8))};
        if (text.rfind("disk:", 0) == 0) return cgpr::DiskPattern{std::stod(text.substr(5))};
    } catch (const std::exception&) {
        // fall through to the common diagnostic
    }
    throw std::invalid_argument("--pattern: expected glyph:TEXT, checker:N, or disk:F, got '" +
                                text + "'");
}

cgpr::HioVariant parse_variant(const std::string& text) {
    if (text == "standard") return cgpr::HioVariant::standard;
    if (text == "fienup") return cgpr::HioVariant::fienup_classic;
    throw std::invalid_argument("--hio-variant: expected standard or fienup, got '" + text + "'");
}

cgpr::Registration parse_registration(const std::string& text) {
    if (text == "none") return cgpr::Registration::none;
    if (text == "shift") return cgpr::Registration::circular_shift;
    throw std::invalid_argument("--registration: expected none or shift, got '" + text + "'");
}

std::string fmt17(double v) { return cgpr::detail::fmt17(v); }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// ---------------------------------------------------------------------------
// phantom

struct PhantomArgs {
    std::string window = "600";
    std::string support = "280";
    double phase_step = 2.0 * std::numbers::pi / 3.0;
    std::string pattern = "glyph:PHASE";
    std::uint64_t seed = 0;
    double dx = 1.0;
    double dy = 1.0;
    std::string out_object = "object.fld";
    std::string out_mask = "mask.fld";
    std::string pgm_amplitude;
    std::string pgm_phase;
};

void cmd_phantom(const PhantomArgs& a) {
    const Extent window = parse_extent(a.window, "--window");
    const Extent support = parse_extent(a.support, "--support");
    cgpr::PhantomSpec spec;
    spec.window_rows = window.rows;
    spec.window_cols = window.cols;
    spec.support_rows = support.rows;
    spec.support_cols = support.cols;
    spec.phase_step = a.phase_step;
    spec.pattern = parse_pattern(a.pattern);
    spec.seed = a.seed;
    spec.dx = a.dx;
    spec.dy = a.dy;

    const cgpr::Phantom phantom = cgpr::make_phantom(spec);
    cgpr::write_field(a.out_object, phantom.object);
    cgpr::write_field(a.out_mask, phantom.mask);
    if (!a.pgm_amplitude.empty())
        cgpr::export_grayscale(phantom.object, cgpr::GrayChannel::amplitude, a.pgm_amplitude);
    if (!a.pgm_phase.empty())
        cgpr::export_grayscale(phantom.object, cgpr::GrayChannel::phase, a.pgm_phase);

    std::cout << "wrote object " << a.out_object << " (" << phantom.object.rows() << "x"
              << phantom.object.cols() << ")\n";
    std::cout << "wrote mask " << a.out_mask << " (inside " << phantom.mask.count_inside()
              << " px)\n";
    std::cout << "zeta " << fmt17(cgpr::complexity_image(phantom.object)) << "\n";
}

// ---------------------------------------------------------------------------
// measure

struct MeasureArgs {
    std::string in = "object.fld";
    std::string out = "magnitude.fld";
    double photons = 0.0;
    bool have_photons = false;
    std::uint64_t seed = 0;
};

void cmd_measure(const MeasureArgs& a) {
    const ComplexField object = cgpr::read_complex_field(a.in);
    MagnitudeData magnitude = cgpr::forward_magnitude(object);
    if (a.have_photons) {
        magnitude = cgpr::apply_poisson(magnitude, cgpr::NoiseSpec{a.photons, a.seed});
        std::cout << "applied poisson noise at " << a.photons << " photons/pixel, seed " << a.seed
                  << "\n";
    }
    cgpr::write_field(a.out, magnitude);
    std::cout << "wrote magnitude " << a.out << " (" << magnitude.rows() << "x" << magnitude.cols()
              << ")\n";
    std::cout << "zeta " << fmt17(cgpr::complexity_fourier(magnitude)) << "\n";
}

// ---------------------------------------------------------------------------
// zeta

void cmd_zeta(const std::string& in) {
    const MagnitudeData magnitude = cgpr::read_magnitude(in);
    std::cout << fmt17(cgpr::complexity_fourier(magnitude)) << "\n";
}

// ---------------------------------------------------------------------------
// hio / cgpr

struct SolveArgs {
    std::string magnitude = "magnitude.fld";
    std::string mask = "mask.fld";
    std::string truth;
    std::string init = "random";
    std::string out_field = "recon.fld";
    std::string out_trace = "trace.csv";
    std::string pgm_amplitude;
    std::string pgm_phase;
    int iters = 500;
    int max_tv_subiters = 200;
    double beta = 0.9;
    double t = 0.005;
    double tol = 0.005;
    std::uint64_t seed = 1;
    std::string variant = "standard";
    std::string registration = "none";
};

ComplexField make_init(const std::string& kind, const MagnitudeData& m, std::uint64_t seed) {
    if (kind == "random") return cgpr::random_phase_init(m.rows(), m.cols(), seed, m.dx(), m.dy());
    if (kind == "constant") {
        ComplexField g(m.rows(), m.cols(), m.dx(), m.dy());
        g.fill(cgpr::Complex{1.0, 0.0});
        return g;
    }
    if (kind.rfind("file:", 0) == 0) return cgpr::read_complex_field(kind.substr(5));
    throw std::invalid_argument("--init: expected random, constant, or file:PATH, got '" + kind +
                                "'");
}

void cmd_solve(const SolveArgs& a, bool guided) {
    const MagnitudeData magnitude = cgpr::read_magnitude(a.magnitude);
    const SupportMask mask = cgpr::read_mask(a.mask);
    std::optional<ComplexField> truth;
    if (!a.truth.empty()) truth = cgpr::read_complex_field(a.truth);

    cgpr::RunConfig cfg;
    cfg.beta = a.beta;
    cfg.t = a.t;
    cfg.zeta_rel_tol = a.tol;
    cfg.max_outer_iters = a.iters;
    cfg.max_tv_subiters = a.max_tv_subiters;
    cfg.seed = a.seed;
    cfg.hio_variant = parse_variant(a.variant);
    cfg.registration = parse_registration(a.registration);

    const ComplexField init = make_init(a.init, magnitude, a.seed);
    const ComplexField* truth_ptr = truth ? &*truth : nullptr;

    const auto start = std::chrono::steady_clock::now();
    const cgpr::RunResult result = guided
                                       ? cgpr::run_cgpr(magnitude, mask, cfg, init, truth_ptr)
                                       : cgpr::run_hio(magnitude, mask, cfg, init, truth_ptr);
    const double total_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    cgpr::write_field(a.out_field, result.field);
    cgpr::write_trace_csv(result.trace, a.out_trace);
    if (!a.pgm_amplitude.empty())
        cgpr::export_grayscale(result.field, cgpr::GrayChannel::amplitude, a.pgm_amplitude);
    if (!a.pgm_phase.empty())
        cgpr::export_grayscale(result.field, cgpr::GrayChannel::phase, a.pgm_phase);

    const cgpr::TraceRecord& last = result.trace.back();
    std::cout << "wrote reconstruction " << a.out_field << "\n";
    std::cout << "wrote trace " << a.out_trace << " (" << result.trace.size() << " iterations)\n";
    if (guided) std::cout << "target zeta " << fmt17(cgpr::complexity_fourier(magnitude)) << "\n";
    std::cout << "final zeta " << fmt17(last.zeta) << "\n";
    if (last.error_sq) std::cout << "final error_sq " << fmt17(*last.error_sq) << "\n";
    std::printf("wall time %.2f ms\n", total_ms);
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
    std::string magnitude = "magnitude.fld";
    std::string mask = "mask.fld";
    std::string truth;
    std::string out_dir = "compare_out";
    int trials = 20;
    int hio_iters = 500;
    int cgpr_iters = 200;
    int max_tv_subiters = 200;
    double beta = 0.9;
    double t = 0.005;
    double tol = 0.005;
    std::uint64_t seed = 1;
    std::string variant = "standard";
    std::string registration = "none";
};

struct TrialOutcome {
    std::uint64_t seed = 0;
    cgpr::IterationTrace hio_trace;
    cgpr::IterationTrace cgpr_trace;
    std::optional<double> hio_error_sq;
    std::optional<double> cgpr_error_sq;
    double hio_ms = 0.0;
    double cgpr_ms = 0.0;
};

void cmd_compare(const CompareArgs& a) {
    if (a.trials < 1) throw std::invalid_argument("--trials: must be at least 1");
    const MagnitudeData magnitude = cgpr::read_magnitude(a.magnitude);
    const SupportMask mask = cgpr::read_mask(a.mask);
    std::optional<ComplexField> truth;
    if (!a.truth.empty()) truth = cgpr::read_complex_field(a.truth);
    const ComplexField* truth_ptr = truth ? &*truth : nullptr;

    cgpr::RunConfig base;
    base.beta = a.beta;
    base.t = a.t;
    base.zeta_rel_tol = a.tol;
    base.max_tv_subiters = a.max_tv_subiters;
    base.hio_variant = parse_variant(a.variant);
    base.registration = parse_registration(a.registration);

    std::filesystem::create_directories(a.out_dir);

    // Both engines start each trial from the identical seeded random-phase
    // init; trials run concurrently (FFT planning is internally locked).
    std::vector<std::future<TrialOutcome>> futures;
    futures.reserve(static_cast<std::size_t>(a.trials));
    for (int k = 0; k < a.trials; ++k) {
        futures.push_back(std::async(std::launch::async, [&, k]() -> TrialOutcome {
            TrialOutcome out;
            out.seed = a.seed + static_cast<std::uint64_t>(k);
            const ComplexField init = cgpr::random_phase_init(magnitude.rows(), magnitude.cols(),
                                                              out.seed, magnitude.dx(),
                                                              magnitude.dy());
            cgpr::RunConfig cfg = base;
            cfg.seed = out.seed;

            cfg.max_outer_iters = a.hio_iters;
            auto t0 = std::chrono::steady_clock::now();
            cgpr::RunResult hio = cgpr::run_hio(magnitude, mask, cfg, init, truth_ptr);
            out.hio_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

            cfg.max_outer_iters = a.cgpr_iters;
            t0 = std::chrono::steady_clock::now();
            cgpr::RunResult guided = cgpr::run_cgpr(magnitude, mask, cfg, init, truth_ptr);
            out.cgpr_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();

            out.hio_error_sq = hio.trace.back().error_sq;
            out.cgpr_error_sq = guided.trace.back().error_sq;
            out.hio_trace = std::move(hio.trace);
            out.cgpr_trace = std::move(guided.trace);
            return out;
        }));
    }

    std::vector<TrialOutcome> outcomes;
    outcomes.reserve(futures.size());
    for (auto& f : futures) outcomes.push_back(f.get());

    const std::filesystem::path dir(a.out_dir);
    for (int k = 0; k < a.trials; ++k) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "trial_%03d", k);
        cgpr::write_trace_csv(outcomes[static_cast<std::size_t>(k)].hio_trace,
                              dir / (std::string(stem) + "_hio.csv"));
        cgpr::write_trace_csv(outcomes[static_cast<std::size_t>(k)].cgpr_trace,
                              dir / (std::string(stem) + "_cgpr.csv"));
    }

    // summary.csv is deliberately timing-free so identical invocations give
    // byte-identical files; wall times go to stdout below.
    std::ofstream summary(dir / "summary.csv", std::ios::trunc);
    if (!summary) throw cgpr::IoFailure("cannot open for writing: " + (dir / "summary.csv").string());
    summary << "kind,seed,hio_final_error_sq,cgpr_final_error_sq\n";
    std::vector<double> hio_errs, cgpr_errs;
    for (const TrialOutcome& o : outcomes) {
        summary << "trial," << o.seed << ','
                << (o.hio_error_sq ? fmt17(*o.hio_error_sq) : std::string{}) << ','
                << (o.cgpr_error_sq ? fmt17(*o.cgpr_error_sq) : std::string{}) << '\n';
        if (o.hio_error_sq) hio_errs.push_back(*o.hio_error_sq);
        if (o.cgpr_error_sq) cgpr_errs.push_back(*o.cgpr_error_sq);
    }
    const auto stat_row = [&](const char* kind, double (*f)(std::vector<double>)) {
        summary << kind << ",,"
                << (hio_errs.empty() ? std::string{} : fmt17(f(hio_errs))) << ','
                << (cgpr_errs.empty() ? std::string{} : fmt17(f(cgpr_errs))) << '\n';
    };
    stat_row("median", [](std::vector<double> v) { return median(std::move(v)); });
    stat_row("min", [](std::vector<double> v) { return *std::min_element(v.begin(), v.end()); });
    stat_row("max", [](std::vector<double> v) { return *std::max_element(v.begin(), v.end()); });
    summary.close();
    if (!summary) throw cgpr::IoFailure("write failed: " + (dir / "summary.csv").string());

    for (int k = 0; k < a.trials; ++k) {
        const TrialOutcome& o = outcomes[static_cast<std::size_t>(k)];
        std::printf("trial %d seed %llu hio %.2f ms cgpr %.2f ms\n", k,
                    static_cast<unsigned long long>(o.seed), o.hio_ms, o.cgpr_ms);
    }
    if (!hio_errs.empty()) {
        std::cout << "hio error_sq median " << fmt17(median(hio_errs)) << "\n";
        std::cout << "cgpr error_sq median " << fmt17(median(cgpr_errs)) << "\n";
    }
    std::cout << "wrote " << (dir / "summary.csv").string() << " and " << 2 * a.trials
              << " trace files\n";
}

void add_solver_flags(CLI::App* sub, SolveArgs& a) {
    sub->add_option("--magnitude", a.magnitude, "measured magnitude file")
        ->capture_default_str();
    sub->add_option("--mask", a.mask, "support mask file")->capture_default_str();
    sub->add_option("--truth", a.truth, "ground-truth field file; enables the error column");
    sub->add_option("--init", a.init, "random | constant | file:PATH")->capture_default_str();
    sub->add_option("--out-field", a.out_field, "reconstruction output")->capture_default_str();
    sub->add_option("--out-trace", a.out_trace, "per-iteration CSV output")
        ->capture_default_str();
    sub->add_option("--pgm-amplitude", a.pgm_amplitude, "optional amplitude graymap output");
    sub->add_option("--pgm-phase", a.pgm_phase, "optional phase graymap output");
    sub->add_option("--beta", a.beta, "off-support feedback coefficient, in (0.5,1)")
        ->capture_default_str();
    sub->add_option("--seed", a.seed, "seed for the random-phase init")->capture_default_str();
    sub->add_option("--hio-variant", a.variant, "standard | fienup")->capture_default_str();
    sub->add_option("--registration", a.registration,
                    "error-metric correlation: none | shift (max over circular shifts)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Phase retrieval from Fourier magnitude data: phantom generation, measurement "
        "simulation, complexity evaluation, and HIO / complexity-guided reconstruction."};
    app.require_subcommand(1);

    PhantomArgs pa;
    CLI::App* phantom = app.add_subcommand(
        "phantom", "Generate a binary-phase test object and its support mask");
    phantom->add_option("--window", pa.window, "computational window, N or ROWS,COLS")
        ->capture_default_str();
    phantom->add_option("--support", pa.support, "support extent, N or ROWS,COLS")
        ->capture_default_str();
    phantom->add_option("--phase-step", pa.phase_step, "phase contrast in radians, in (0,2pi)")
        ->capture_default_str();
    phantom->add_option("--pattern", pa.pattern, "glyph:TEXT | checker:N | disk:F")
        ->capture_default_str();
    phantom->add_option("--seed", pa.seed, "reserved for randomized patterns")
        ->capture_default_str();
    phantom->add_option("--dx", pa.dx, "sample spacing along rows")->capture_default_str();
    phantom->add_option("--dy", pa.dy, "sample spacing along columns")->capture_default_str();
    phantom->add_option("--out-object", pa.out_object, "object field output")
        ->capture_default_str();
    phantom->add_option("--out-mask", pa.out_mask, "support mask output")->capture_default_str();
    phantom->add_option("--pgm-amplitude", pa.pgm_amplitude, "optional amplitude graymap output");
    phantom->add_option("--pgm-phase", pa.pgm_phase, "optional phase graymap output");
    phantom->callback([&] { cmd_phantom(pa); });

    MeasureArgs ma;
    CLI::App* measure = app.add_subcommand(
        "measure", "Compute the Fourier magnitude of a field, optionally Poisson-noisy");
    measure->add_option("--in", ma.in, "input field file")->capture_default_str();
    measure->add_option("--out", ma.out, "magnitude output")->capture_default_str();
    CLI::Option* photons_opt =
        measure->add_option("--photons", ma.photons, "mean photons per pixel; omit for noiseless");
    measure->add_option("--seed", ma.seed, "noise seed")->capture_default_str();
    measure->callback([&] {
        ma.have_photons = photons_opt->count() > 0;
        cmd_measure(ma);
    });

    std::string zeta_in = "magnitude.fld";
    CLI::App* zeta = app.add_subcommand(
        "zeta", "Print the complexity estimate of a magnitude file (17 significant digits)");
    zeta->add_option("--in", zeta_in, "magnitude file")->capture_default_str();
    zeta->callback([&] { cmd_zeta(zeta_in); });

    SolveArgs ha;
    CLI::App* hio = app.add_subcommand("hio", "Run plain HIO iterations");
    add_solver_flags(hio, ha);
    hio->add_option("--iters", ha.iters, "outer iterations")->capture_default_str();
    hio->callback([&] { cmd_solve(ha, false); });

    SolveArgs ca;
    ca.iters = 200;
    CLI::App* guided = app.add_subcommand(
        "cgpr", "Run complexity-guided iterations (HIO plus banded TV descent)");
    add_solver_flags(guided, ca);
    guided->add_option("--iters", ca.iters, "outer iterations")->capture_default_str();
    guided->add_option("--t", ca.t, "TV descent step scale")->capture_default_str();
    guided->add_option("--tol", ca.tol, "relative half-width of the complexity band")
        ->capture_default_str();
    guided->add_option("--max-tv-subiters", ca.max_tv_subiters, "cap on TV substeps per iteration")
        ->capture_default_str();
    guided->callback([&] { cmd_solve(ca, true); });

    CompareArgs cmp;
    CLI::App* compare = app.add_subcommand(
        "compare", "Run paired HIO and guided trials from identical seeded inits");
    compare->add_option("--magnitude", cmp.magnitude, "measured magnitude file")
        ->capture_default_str();
    compare->add_option("--mask", cmp.mask, "support mask file")->capture_default_str();
    compare->add_option("--truth", cmp.truth, "ground-truth field file; enables error columns");
    compare->add_option("--out-dir", cmp.out_dir, "output directory")->capture_default_str();
    compare->add_option("--trials", cmp.trials, "number of seeded trials")->capture_default_str();
    compare->add_option("--hio-iters", cmp.hio_iters, "HIO iterations per trial")
        ->capture_default_str();
    compare->add_option("--cgpr-iters", cmp.cgpr_iters, "guided iterations per trial")
        ->capture_default_str();
    compare->add_option("--beta", cmp.beta, "off-support feedback coefficient, in (0.5,1)")
        ->capture_default_str();
    compare->add_option("--t", cmp.t, "TV descent step scale")->capture_default_str();
    compare->add_option("--tol", cmp.tol, "relative half-width of the complexity band")
        ->capture_default_str();
    compare->add_option("--max-tv-subiters", cmp.max_tv_subiters,
                        "cap on TV substeps per iteration")
        ->capture_default_str();
    compare->add_option("--seed", cmp.seed, "base seed; trial k uses seed+k")
        ->capture_default_str();
    compare->add_option("--hio-variant", cmp.variant, "standard | fienup")->capture_default_str();
    compare->add_option("--registration", cmp.registration,
                        "error-metric correlation: none | shift")
        ->capture_default_str();
    compare->callback([&] { cmd_compare(cmp); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const cgpr::BadMagic& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cgpr::TruncatedPayload& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cgpr::UnknownKind& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cgpr::IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const cgpr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
