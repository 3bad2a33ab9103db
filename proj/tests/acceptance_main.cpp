// Acceptance harness: one self-contained check per numbered criterion,
// printing exactly one PASS/FAIL line each. Usage:
//   acceptance [--only N] [--full]
// --only N runs a single criterion; --full additionally runs the large-grid
// variants (slow). Exit status is 0 iff every executed criterion passed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cgpr/complexity.hpp"
#include "cgpr/field.hpp"
#include "cgpr/io.hpp"
#include "cgpr/mask.hpp"
#include "cgpr/measurement.hpp"
#include "cgpr/phantom.hpp"
#include "cgpr/solver.hpp"
#include "cgpr/sparsity.hpp"
#include "oracles.hpp"

using cgpr::Complex;
using cgpr::ComplexField;
using cgpr::MagnitudeData;
using cgpr::SupportMask;

namespace {

// ---------------------------------------------------------------------------
// shared fixtures

struct DeskPhantom {
    ComplexField object;
    SupportMask mask;
    MagnitudeData magnitude;  // noiseless
};

DeskPhantom desk_checker() {
    cgpr::PhantomSpec spec;
    spec.window_rows = spec.window_cols = 128;
    spec.support_rows = spec.support_cols = 60;
    spec.pattern = cgpr::CheckerPattern{8};
    auto [object, mask] = cgpr::make_phantom(spec);
    MagnitudeData m = cgpr::forward_magnitude(object);
    return {std::move(object), std::move(mask), std::move(m)};
}

DeskPhantom desk_glyph() {
    cgpr::PhantomSpec spec;
    spec.window_rows = spec.window_cols = 128;
    spec.support_rows = spec.support_cols = 60;
    spec.pattern = cgpr::GlyphPattern{"PHASE"};
    auto [object, mask] = cgpr::make_phantom(spec);
    MagnitudeData m = cgpr::forward_magnitude(object);
    return {std::move(object), std::move(mask), std::move(m)};
}

DeskPhantom full_glyph() {
    cgpr::PhantomSpec spec;  // defaults: 600x600 window, 280x280 support
    spec.pattern = cgpr::GlyphPattern{"PHASE"};
    auto [object, mask] = cgpr::make_phantom(spec);
    MagnitudeData m = cgpr::forward_magnitude(object);
    return {std::move(object), std::move(mask), std::move(m)};
}

// Random-phase start confined to the support: the library's windowwide init
// with everything outside the support zeroed. Keeping the start inside the
// known support is a standard protocol choice and is shared by both engines
// of each pair, so the comparison stays like-for-like.
ComplexField confined_random_init(const SupportMask& mask, std::uint64_t seed) {
    ComplexField g = cgpr::random_phase_init(mask.rows(), mask.cols(), seed);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!mask.inside(i)) g[i] = Complex{0.0, 0.0};
    return g;
}

cgpr::RunConfig classic_config(int iters, int cap) {
    cgpr::RunConfig cfg;
    cfg.max_outer_iters = iters;
    cfg.max_tv_subiters = cap;
    cfg.hio_variant = cgpr::HioVariant::fienup_classic;
    return cfg;
}

double final_error(const cgpr::RunResult& res) {
    return res.trace.back().error_sq.value();
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream ss;
    ss.precision(prec);
    ss << v;
    return ss.str();
}

constexpr std::uint64_t kPairSeeds[5] = {11, 12, 13, 14, 15};
constexpr int kGuidedCap = 400;

// Noiseless paired-protocol artifacts, shared by criteria 4 and 5.
struct PairedRuns {
    double zeta_target = 0.0;
    std::vector<double> hio_final;          // 500 iterations each
    std::vector<double> cgpr_final;         // 200 iterations each
    std::vector<cgpr::IterationTrace> cgpr_traces;
};

const PairedRuns& paired_runs() {
    static const PairedRuns runs = [] {
        PairedRuns out;
        const DeskPhantom desk = desk_glyph();
        out.zeta_target = cgpr::complexity_fourier(desk.magnitude);
        for (std::uint64_t seed : kPairSeeds) {
            const ComplexField init = confined_random_init(desk.mask, seed);
            cgpr::RunResult hio =
                cgpr::run_hio(desk.magnitude, desk.mask, classic_config(500, kGuidedCap), init,
                              &desk.object);
            cgpr::RunResult guided =
                cgpr::run_cgpr(desk.magnitude, desk.mask, classic_config(200, kGuidedCap), init,
                               &desk.object);
            out.hio_final.push_back(final_error(hio));
            out.cgpr_final.push_back(final_error(guided));
            out.cgpr_traces.push_back(std::move(guided.trace));
        }
        return out;
    }();
    return runs;
}

std::string join(const std::vector<double>& v, int prec = 3) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt(v[i], prec);
    return s;
}

// ---------------------------------------------------------------------------
// criteria

struct Verdict {
    bool pass;
    std::string detail;
    std::vector<std::string> notes;  // indented informational lines
};

// 1: image-domain and Fourier-domain complexity agree to double precision.
Verdict criterion_parity(bool) {
    const std::size_t sizes[][2] = {{7, 5}, {16, 16}, {64, 64}, {128, 128}};
    double worst = 0.0;
    int count = 0;
    for (const auto& sz : sizes) {
        for (int k = 0; k < 25; ++k) {
            const ComplexField f =
                oracle::random_field(sz[0], sz[1], 1000 + 100 * count + k);
            const double zi = cgpr::complexity_image(f);
            const MagnitudeData m = cgpr::forward_magnitude(f);
            const double zf = cgpr::complexity_fourier(m);
            worst = std::max(worst, std::abs(zi - zf) / zi);
            ++count;
        }
    }
    return {worst <= 1e-12,
            "relative image/Fourier complexity gap over 100 fields: worst " + fmt(worst, 2) +
                " (bound 1e-12)",
            {}};
}

// 2: conjugate reflection leaves the Fourier magnitude untouched.
Verdict criterion_twin_magnitude(bool) {
    const std::size_t sizes[][2] = {{7, 5}, {16, 16}, {64, 64}, {128, 128}};
    double worst = 0.0;
    int count = 0;
    for (const auto& sz : sizes) {
        for (int k = 0; k < 25; ++k) {
            const ComplexField f =
                oracle::random_field(sz[0], sz[1], 2000 + 100 * count + k);
            const ComplexField sf = cgpr::dft2(f);
            const ComplexField st = cgpr::dft2(cgpr::twin(f));
            double mx = 0.0, dev = 0.0;
            for (std::size_t i = 0; i < sf.size(); ++i) {
                mx = std::max(mx, std::abs(sf[i]));
                dev = std::max(dev, std::abs(std::abs(st[i]) - std::abs(sf[i])));
            }
            worst = std::max(worst, dev / mx);
            ++count;
        }
    }
    return {worst <= 1e-12,
            "twin magnitude deviation over 100 fields: worst " + fmt(worst, 2) +
                " of spectrum max (bound 1e-12)",
            {}};
}

// 3: plain HIO stagnates with its complexity pinned above the data estimate.
Verdict criterion_plateau(bool full) {
    const DeskPhantom desk = desk_checker();
    const double target = cgpr::complexity_fourier(desk.magnitude);

    const auto plateau_ratio = [&](const ComplexField& init) {
        const cgpr::RunResult res =
            cgpr::run_hio(desk.magnitude, desk.mask, classic_config(500, kGuidedCap), init);
        double sum = 0.0;
        for (std::size_t i = res.trace.size() - 100; i < res.trace.size(); ++i)
            sum += res.trace[i].zeta;
        return sum / 100.0 / target;
    };

    ComplexField constant(desk.object.rows(), desk.object.cols());
    constant.fill(Complex{1.0, 0.0});
    const double const_ratio = plateau_ratio(constant);

    int above = 0;
    std::vector<double> ratios;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ratios.push_back(plateau_ratio(cgpr::random_phase_init(128, 128, seed)));
        if (ratios.back() >= 1.05) ++above;
    }

    Verdict v{above >= 4 && const_ratio > 1.0,
              "late-iteration complexity ratio vs data estimate: random seeds {" + join(ratios) +
                  "} (need >=1.05 in 4 of 5), constant init " + fmt(const_ratio) + " (need >1)",
              {}};
    if (full) {
        const DeskPhantom big = full_glyph();
        const double big_target = cgpr::complexity_fourier(big.magnitude);
        const cgpr::RunResult res = cgpr::run_hio(
            big.magnitude, big.mask, classic_config(500, kGuidedCap),
            cgpr::random_phase_init(big.object.rows(), big.object.cols(), 1));
        double sum = 0.0;
        for (std::size_t i = res.trace.size() - 100; i < res.trace.size(); ++i)
            sum += res.trace[i].zeta;
        v.notes.push_back("full 600x600 plateau ratio " + fmt(sum / 100.0 / big_target) +
                          " (reference point 1.25, informational)");
    }
    return v;
}

// 4: guided runs beat plain HIO given far fewer iterations.
Verdict criterion_guided_beats_hio(bool) {
    const PairedRuns& runs = paired_runs();
    int wins = 0;
    for (std::size_t i = 0; i < runs.cgpr_final.size(); ++i)
        if (runs.cgpr_final[i] < runs.hio_final[i]) ++wins;
    const double med = median_of(runs.cgpr_final);

    const bool pairs_ok = wins >= 4;
    const bool median_ok = med <= 0.05;
    Verdict v{pairs_ok && median_ok,
              "guided@200 vs plain@500: wins " + std::to_string(wins) +
                  "/5 (need >=4), guided median " + fmt(med) + " (need <=0.05)",
              {"guided finals {" + join(runs.cgpr_final) + "}",
               "plain finals  {" + join(runs.hio_final) + "}"}};
    if (!median_ok) {
        v.notes.push_back(
            "median clause: converged runs floor at the retained off-support power "
            "(~0.07 at this scale); see README notes");
    }
    return v;
}

// 5: whenever the sub-loop stopped by itself, it stopped inside the band.
Verdict criterion_banding(bool) {
    const PairedRuns& runs = paired_runs();
    const double bound = runs.zeta_target * 1.005;
    long checked = 0, violations = 0;
    for (const auto& trace : runs.cgpr_traces) {
        for (const auto& rec : trace) {
            if (rec.tv_substeps >= 1 && rec.tv_substeps < kGuidedCap) {
                ++checked;
                if (rec.zeta > bound) ++violations;
            }
        }
    }
    return {violations == 0 && checked > 0,
            "guided iterations ending inside the band: " + std::to_string(checked) +
                " checked, " + std::to_string(violations) +
                " above 1.005x target (zero allowed)",
            {}};
}

// 6: error metric identities on exact, twin, and phase-rotated inputs.
Verdict criterion_error_identities(bool) {
    const char* patterns[4] = {"checker", "glyph", "disk", "checker4"};
    double worst_twin = 0.0, worst_phase = 0.0;
    bool exact_ok = true;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
    for (int k = 0; k < 20; ++k) {
        cgpr::PhantomSpec spec;
        spec.window_rows = spec.window_cols = 64;
        spec.support_rows = spec.support_cols = 28;
        spec.seed = 600 + k;
        switch (k % 4) {
            case 0: spec.pattern = cgpr::CheckerPattern{7}; break;
            case 1: spec.pattern = cgpr::GlyphPattern{"PHASE"}; break;
            case 2: spec.pattern = cgpr::DiskPattern{0.35}; break;
            default: spec.pattern = cgpr::CheckerPattern{4}; break;
        }
        const ComplexField truth = cgpr::make_phantom(spec).object;

        if (cgpr::error_metric(truth, truth, cgpr::Registration::none) != 0.0) exact_ok = false;
        worst_twin = std::max(
            worst_twin, cgpr::error_metric(cgpr::twin(truth), truth, cgpr::Registration::none));
        const Complex rot = std::polar(1.0, uni(rng));
        ComplexField rotated = truth;
        for (Complex& v : rotated.samples()) v *= rot;
        worst_phase = std::max(
            worst_phase, cgpr::error_metric(rotated, truth, cgpr::Registration::none));
    }
    return {exact_ok && worst_twin <= 1e-12 && worst_phase <= 1e-12,
            "20 phantoms: exact-input error " + std::string(exact_ok ? "0" : "nonzero") +
                ", worst twin " + fmt(worst_twin, 2) + ", worst phase-rotated " +
                fmt(worst_phase, 2) + " (bounds: 0, 1e-12, 1e-12)",
            {}};
}

// 7: the complexity estimate barely moves between photon budgets.
Verdict criterion_noise_stability(bool full) {
    const DeskPhantom desk = desk_checker();
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const double lo =
            cgpr::complexity_fourier(cgpr::apply_poisson(desk.magnitude, {1e4, seed}));
        const double hi =
            cgpr::complexity_fourier(cgpr::apply_poisson(desk.magnitude, {1e6, seed}));
        worst = std::max(worst, std::abs(lo - hi) / hi);
    }
    Verdict v{worst <= 0.01,
              "complexity shift between 1e4 and 1e6 photons over 10 seed pairs: worst " +
                  fmt(worst, 2) + " (bound 1e-2 at this grid size)",
              {}};
    if (full) {
        const DeskPhantom big = full_glyph();
        const double lo =
            cgpr::complexity_fourier(cgpr::apply_poisson(big.magnitude, {1e4, 1}));
        const double hi =
            cgpr::complexity_fourier(cgpr::apply_poisson(big.magnitude, {1e6, 1}));
        const double rel = std::abs(lo - hi) / hi;
        v.notes.push_back("full 600x600 shift " + fmt(rel, 2) + " (bound 5e-4)");
        if (rel > 5e-4) v.pass = false;
    }
    return v;
}

// 8: reconstruction quality from photon-limited data.
Verdict criterion_noisy_reconstruction(bool) {
    const DeskPhantom desk = desk_glyph();
    const MagnitudeData m_hi = cgpr::apply_poisson(desk.magnitude, {1e6, 7});
    const MagnitudeData m_lo = cgpr::apply_poisson(desk.magnitude, {1e4, 7});

    std::vector<double> hi_final, lo_guided, lo_plain;
    for (std::uint64_t seed : kPairSeeds) {
        const ComplexField init = confined_random_init(desk.mask, seed);
        hi_final.push_back(final_error(
            cgpr::run_cgpr(m_hi, desk.mask, classic_config(200, kGuidedCap), init,
                           &desk.object)));
        lo_guided.push_back(final_error(
            cgpr::run_cgpr(m_lo, desk.mask, classic_config(200, kGuidedCap), init,
                           &desk.object)));
        lo_plain.push_back(final_error(
            cgpr::run_hio(m_lo, desk.mask, classic_config(200, kGuidedCap), init,
                          &desk.object)));
    }

    int hi_good = 0, lo_wins = 0;
    for (std::size_t i = 0; i < hi_final.size(); ++i) {
        if (hi_final[i] <= 0.1) ++hi_good;
        if (lo_guided[i] < lo_plain[i]) ++lo_wins;
    }
    const bool hi_ok = hi_good >= 4;
    const bool lo_ok = lo_wins >= 4;
    return {hi_ok && lo_ok,
            "1e6 photons: guided@200 error <=0.1 in " + std::to_string(hi_good) +
                "/5 (need >=4); 1e4 photons: guided < plain at equal iterations in " +
                std::to_string(lo_wins) + "/5 (need >=4)",
            {"1e6 guided finals {" + join(hi_final) + "}",
             "1e4 guided {" + join(lo_guided) + "} vs plain {" + join(lo_plain) + "}"}};
}

// 9: smoothing machinery — adjoint identity, exact step length, descent.
Verdict criterion_tv_machinery(bool) {
    const cgpr::TvParams p;

    double worst_adjoint = 0.0;
    for (int k = 0; k < 20; ++k) {
        const std::size_t rows = k % 2 ? 12 : 16;
        const std::size_t cols = k % 3 ? 16 : 20;
        const ComplexField f = oracle::random_field(rows, cols, 900 + 2 * k);
        const ComplexField h = oracle::random_field(rows, cols, 901 + 2 * k);
        const Complex lhs = cgpr::inner(h, cgpr::tv_gradient(f, p));

        const auto gf = cgpr::grad_central(f);
        double gmax = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i)
            gmax = std::max(gmax, std::sqrt(std::norm(gf.gx[i]) + std::norm(gf.gy[i])));
        const double eps = p.epsilon * std::max(1.0, gmax);
        const auto gh = cgpr::grad_central(h);
        Complex rhs{0.0, 0.0};
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double denom =
                std::sqrt(std::norm(gf.gx[i]) + std::norm(gf.gy[i]) + eps * eps);
            rhs += 0.5 * (gh.gx[i] * std::conj(gf.gx[i] / denom) +
                          gh.gy[i] * std::conj(gf.gy[i] / denom));
        }
        worst_adjoint = std::max(worst_adjoint, std::abs(lhs - rhs) / std::abs(rhs));
    }

    double worst_step = 0.0;
    int decreased = 0;
    for (int k = 0; k < 100; ++k) {
        const ComplexField f = oracle::random_field(32, 32, 950 + k);
        const ComplexField stepped = cgpr::tv_descent_step(f, p);
        ComplexField delta = stepped;
        for (std::size_t i = 0; i < delta.size(); ++i) delta[i] -= f[i];
        const double want = p.step_scale * cgpr::norm_l2(f);
        worst_step = std::max(
            worst_step, std::abs(cgpr::norm_l2(delta) - want) / cgpr::norm_l2(f));
        if (cgpr::tv(stepped) < cgpr::tv(f)) ++decreased;
    }

    return {worst_adjoint <= 1e-10 && worst_step <= 1e-12 && decreased >= 95,
            "adjoint identity worst " + fmt(worst_adjoint, 2) +
                " (bound 1e-10); step-length identity worst " + fmt(worst_step, 2) +
                " (bound 1e-12); tv decreased in " + std::to_string(decreased) +
                "/100 steps (need >=95)",
            {}};
}

// 10: transforms, gradients, and tv match brute-force reimplementations.
Verdict criterion_oracles(bool) {
    const std::size_t sizes[][2] = {{4, 4}, {8, 8}, {16, 16}, {7, 5}};
    double worst = 0.0;
    for (const auto& sz : sizes) {
        for (int k = 0; k < 5; ++k) {
            const ComplexField f =
                oracle::random_field(sz[0], sz[1], 700 + 10 * k + sz[0]);

            const auto rel_field = [](const ComplexField& a, const ComplexField& b) {
                double mx = 0.0, dev = 0.0;
                for (std::size_t i = 0; i < a.size(); ++i) {
                    mx = std::max(mx, std::abs(b[i]));
                    dev = std::max(dev, std::abs(a[i] - b[i]));
                }
                return dev / std::max(mx, 1e-300);
            };

            worst = std::max(worst, rel_field(cgpr::dft2(f), oracle::dft2_naive(f)));
            worst = std::max(worst, rel_field(cgpr::idft2(f), oracle::idft2_naive(f)));
            const auto lib_g = cgpr::grad_central(f);
            const auto ora_g = oracle::grad_naive(f);
            worst = std::max(worst, rel_field(lib_g.gx, ora_g.gx));
            worst = std::max(worst, rel_field(lib_g.gy, ora_g.gy));
            worst = std::max(worst,
                             std::abs(cgpr::tv(f) - oracle::tv_naive(f)) / oracle::tv_naive(f));
        }
    }
    return {worst <= 1e-12,
            "library vs brute-force transforms/gradients/tv on grids up to 16x16: worst "
            "relative gap " +
                fmt(worst, 2) + " (bound 1e-12)",
            {}};
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    bool full = false;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (arg == "--full") {
            full = true;
        } else if (arg == "--help" || arg == "-h") {
            std::cout << "usage: acceptance [--only N] [--full]\n";
            return 0;
        } else {
            std::cerr << "unknown argument: " << arg << "\n";
            return 2;
        }
    }

    struct Entry {
        int id;
        const char* name;
        std::function<Verdict(bool)> run;
    };
    const Entry entries[] = {
        {1, "complexity parity", criterion_parity},
        {2, "twin magnitude invariance", criterion_twin_magnitude},
        {3, "plain-HIO complexity plateau", criterion_plateau},
        {4, "guided beats plain HIO", criterion_guided_beats_hio},
        {5, "guided complexity banding", criterion_banding},
        {6, "error metric identities", criterion_error_identities},
        {7, "complexity noise stability", criterion_noise_stability},
        {8, "noisy-data reconstruction", criterion_noisy_reconstruction},
        {9, "tv machinery", criterion_tv_machinery},
        {10, "oracle equivalence", criterion_oracles},
    };

    bool all_pass = true;
    bool ran_any = false;
    for (const Entry& e : entries) {
        if (only != 0 && e.id != only) continue;
        ran_any = true;
        const Verdict v = e.run(full);
        std::cout << "criterion " << e.id << " (" << e.name << "): "
                  << (v.pass ? "PASS" : "FAIL") << " — " << v.detail << "\n";
        for (const std::string& note : v.notes) std::cout << "  " << note << "\n";
        if (!v.pass) all_pass = false;
    }
    if (!ran_any) {
        std::cerr << "no such criterion: " << only << "\n";
        return 2;
    }
    return all_pass ? 0 : 1;
}
