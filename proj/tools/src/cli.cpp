#include "oversparse/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "oversparse/coherence.hpp"
#include "oversparse/error.hpp"
#include "oversparse/fixtures.hpp"
#include "oversparse/io.hpp"
#include "oversparse/metrics.hpp"
#include "oversparse/recon.hpp"
#include "oversparse/rng.hpp"

namespace oversparse::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string coherence_label(TransformKind kind) {
    switch (kind) {
        case TransformKind::DWT: return "DWT";
        case TransformKind::DT_COMPLEX: return "DT-CoWT";
        case TransformKind::DD_DWT: return "DD-DWT";
        case TransformKind::DD_DT_REAL:
        case TransformKind::DD_DT_COMPLEX: return "DD-DT-DWT";
    }
    return "?";
}

namespace {

// Stream seeds derived from the user seed. The mask uses the seed itself.
constexpr std::uint64_t kNoiseStream = 1;
constexpr std::uint64_t kTrialStream = 2;

json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    if (c.command == "metrics") {
        j["reference"] = c.reference;
        j["candidate"] = c.candidate;
        j["csv"] = c.csv;
        return j;
    }
    std::vector<std::string> kinds;
    for (auto k : c.kinds) kinds.emplace_back(to_string(k));
    j["kinds"] = kinds;
    j["levels"] = c.levels;
    j["ratio"] = c.ratio;
    j["scheme"] = std::string(to_string(c.scheme));
    j["power"] = c.power;
    j["seed"] = c.seed;
    if (c.command == "coherence") {
        j["size"] = c.size;
        j["trials"] = c.trials;
        j["batch"] = c.batch;
        j["level"] = c.level;
        j["all_subbands"] = c.all_subbands;
        j["per_trial"] = c.per_trial;
    } else {
        j["input"] = c.input;
        j["fixture"] = c.input.empty() ? json(c.fixture) : json(nullptr);
        j["size"] = c.size;
        j["eight_bit"] = c.eight_bit;
        j["crop"] = c.crop;
        j["domain"] = std::string(to_string(c.domain));
        j["sigma"] = c.sigma;
        j["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
        j["lambda_factor"] = c.lambda_factor;
        j["lambda_decay"] = c.lambda_decay ? json(*c.lambda_decay) : json(nullptr);
        j["epsilon"] = c.epsilon;
        j["max_iter"] = c.max_iter;
    }
    j["out_dir"] = c.out_dir;
    j["csv"] = c.csv;
    return j;
}

std::vector<TransformKind> parse_kinds(const std::vector<std::string>& names, bool coherence) {
    std::vector<TransformKind> kinds;
    for (const auto& n : names) {
        std::string lower = n;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (lower == "all") {
            if (coherence) {
                // DD_DT_REAL and DD_DT_COMPLEX span the same atoms.
                kinds.insert(kinds.end(), {TransformKind::DWT, TransformKind::DT_COMPLEX, TransformKind::DD_DWT,
                                           TransformKind::DD_DT_COMPLEX});
            } else {
                kinds.insert(kinds.end(), kAllKinds.begin(), kAllKinds.end());
            }
        } else {
            kinds.push_back(parse_kind(n));
        }
    }
    std::vector<TransformKind> unique;
    for (auto k : kinds)
        if (std::find(unique.begin(), unique.end(), k) == unique.end()) unique.push_back(k);
    return unique;
}

std::uint64_t default_seed() {
    const char* env = std::getenv("OVERSPARSE_SEED");
    if (!env || !*env) return 1;
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ArgumentError("OVERSPARSE_SEED must be a non-negative integer, got '" + std::string(s) + "'");
    return v;
}

std::size_t floor_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p * 2 <= n) p *= 2;
    return p;
}

Image center_crop(const Image& img) {
    const std::size_t w = floor_power_of_two(img.width()), h = floor_power_of_two(img.height());
    const std::size_t c0 = (img.width() - w) / 2, r0 = (img.height() - h) / 2;
    Image out(w, h, img.scale);
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) out.pixels(r, c) = img.pixels(r + r0, c + c0);
    return out;
}

Image load_input(const RunConfig& c) {
    Image img;
    if (c.input.empty()) {
        img = make_fixture(c.fixture, c.size);
        if (c.eight_bit) {
            for (auto& v : img.pixels.values()) v = std::round(v * 255.0);
            img.scale = ValueScale::EightBit;
        }
    } else {
        img = read_image(c.input);
    }
    if (c.crop) img = center_crop(img);
    if (!is_power_of_two(img.width()) || !is_power_of_two(img.height()))
        throw DimensionError("image is " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                             "; dimensions must be powers of two (use --crop)");
    return img;
}

fs::path prepare_out_dir(const RunConfig& c) {
    fs::path dir(c.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

fs::path csv_path(const RunConfig& c, const fs::path& dir, const char* fallback) {
    return c.csv.empty() ? dir / fallback : fs::path(c.csv);
}

ReconParams recon_params(const RunConfig& c, TransformKind kind) {
    ReconParams p;
    p.kind = kind;
    p.levels = c.levels;
    p.lambda = c.lambda;
    p.lambda_factor = c.lambda_factor;
    if (c.lambda_decay) {
        p.schedule = LambdaSchedule::LinearDecay;
        p.final_fraction = *c.lambda_decay;
    }
    p.epsilon = c.epsilon;
    p.max_iter = c.max_iter;
    p.domain = c.domain;
    p.validate();
    return p;
}

Measurements measure(const RunConfig& c, const Image& img, SamplingMask* mask_out) {
    SamplingMask mask = make_mask(img.width(), img.height(), c.ratio, c.domain, c.scheme, c.seed, c.power);
    if (mask_out) *mask_out = mask;
    const std::uint64_t noise_seed = derive_seed(c.seed, kNoiseStream);
    return c.domain == Domain::Frequency ? sense_frequency(img, mask, c.sigma, noise_seed)
                                         : sense_physical(img, mask, c.sigma, noise_seed);
}

std::string trace_csv(const ReconResult& r) {
    std::string s = r.rmse_trace.empty() ? "iteration,relative_change\n" : "iteration,relative_change,rmse\n";
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
        s += std::to_string(i + 1) + "," + format_double(r.trace[i]);
        if (!r.rmse_trace.empty()) s += "," + format_double(r.rmse_trace[i]);
        s += "\n";
    }
    return s;
}

int cmd_coherence(const RunConfig& c, std::ostream& out) {
    const fs::path dir = prepare_out_dir(c);
    const SamplingMask mask = make_mask(c.size, c.size, c.ratio, Domain::Frequency, c.scheme, c.seed, c.power);
    CoherenceOptions opt;
    opt.levels = c.levels;
    opt.trials = c.trials;
    opt.batch = c.batch;
    opt.level = c.level;
    opt.all_subbands = c.all_subbands;
    opt.seed = derive_seed(c.seed, kTrialStream);

    std::string csv = "transform,kind,ratio,trials,batch,seed,mu_tilde,rejected\n";
    for (auto k : c.kinds) {
        const CoherenceEstimate e = estimate_coherence_mc(k, c.size, c.size, mask, opt);
        csv += coherence_label(k) + "," + std::string(to_string(k)) + "," + format_double(c.ratio) + "," +
               std::to_string(e.trials) + "," + std::to_string(e.batch) + "," + std::to_string(c.seed) + "," +
               format_double(e.mu_tilde) + "," + std::to_string(e.rejected) + "\n";
        if (c.per_trial) {
            std::string t = "trial,v\n";
            for (std::size_t i = 0; i < e.v.size(); ++i) t += std::to_string(i + 1) + "," + format_double(e.v[i]) + "\n";
            write_file(dir / ("coherence_trials_" + std::string(to_string(k)) + ".csv"), t);
        }
    }
    write_file(csv_path(c, dir, "coherence.csv"), csv);
    out << csv;
    return kOk;
}

json result_json(const RunConfig& c, const ReconResult& r, const Image& ref) {
    const TraceSummary ts = trace_summary(r.trace, r.params.epsilon);
    json j;
    j["kind"] = std::string(to_string(r.params.kind));
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["knee"] = ts.knee;
    j["final_change"] = number(ts.final_change);
    j["lambda"] = r.lambda;
    j["rmse"] = number(rms_error(ref, r.image));
    j["snr_db"] = number(snr_db(ref, r.image));
    j["discarded_imag_energy"] = r.discarded_imag_energy;
    j["seed"] = c.seed;
    return j;
}

int cmd_reconstruct(const RunConfig& c, std::ostream& out) {
    if (c.kinds.size() != 1) throw ArgumentError("reconstruct takes exactly one --kind");
    const fs::path dir = prepare_out_dir(c);
    const Image img = load_input(c);
    SamplingMask mask;
    const Measurements meas = measure(c, img, &mask);
    const ReconResult r = pocs_reconstruct(meas, recon_params(c, c.kinds.front()), &img);

    write_mask(dir / "mask.pbm", mask);
    write_pgm(dir / "reconstructed.pgm", r.image);
    RawGrid raw;
    raw.scale = r.image.scale;
    raw.real = r.image.pixels;
    write_raw(dir / "reconstructed.raw", raw);
    write_file(csv_path(c, dir, "trace.csv"), trace_csv(r));

    json summary = result_json(c, r, img);
    summary["config"] = config_json(c);
    write_file(dir / "summary.json", summary.dump() + "\n");
    out << summary.dump() << "\n";
    return kOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const fs::path dir = prepare_out_dir(c);
    const Image img = load_input(c);
    SamplingMask mask;
    const Measurements meas = measure(c, img, &mask);
    write_mask(dir / "mask.pbm", mask);

    std::string csv = "transform,rmse,snr_db,iterations,converged,seed,knee,lambda\n";
    bool failed = false;
    for (auto k : c.kinds) {
        try {
            const ReconResult r = pocs_reconstruct(meas, recon_params(c, k), &img);
            const TraceSummary ts = trace_summary(r.trace, r.params.epsilon);
            csv += std::string(display_name(k)) + "," + format_double(rms_error(img, r.image)) + "," +
                   format_double(snr_db(img, r.image)) + "," + std::to_string(r.iterations) + "," +
                   (r.converged ? "true" : "false") + "," + std::to_string(c.seed) + "," + std::to_string(ts.knee) +
                   "," + format_double(r.lambda) + "\n";
            write_file(dir / ("trace_" + std::string(to_string(k)) + ".csv"), trace_csv(r));
        } catch (const NumericalError& e) {
            failed = true;
            err << display_name(k) << ": " << e.what() << "\n";
            csv += std::string(display_name(k)) + ",nan,nan,0,false," + std::to_string(c.seed) + ",0,nan\n";
        }
    }
    write_file(csv_path(c, dir, "sweep.csv"), csv);
    out << csv;
    return failed ? kNumerical : kOk;
}

int cmd_metrics(const RunConfig& c, std::ostream& out) {
    const Image ref = read_image(c.reference);
    const Image rec = read_image(c.candidate);
    const std::string csv = "rmse,snr_db\n" + format_double(rms_error(ref, rec)) + "," + format_double(snr_db(ref, rec)) + "\n";
    if (!c.csv.empty()) write_file(c.csv, csv);
    out << csv;
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Overcomplete wavelet compressed sensing: coherence estimates and POCS reconstruction"};
    app.name(args.empty() ? "oversparse" : fs::path(args.front()).filename().string());
    app.require_subcommand(1);

    RunConfig c;
    std::vector<std::string> kind_names;
    std::string domain_name = "frequency", scheme_name;

    auto add_seed = [&](CLI::App* s) {
        s->add_option("--seed", c.seed, "Base seed for masks, noise and trials (default: $OVERSPARSE_SEED or 1)");
    };
    auto add_mask = [&](CLI::App* s) {
        s->add_option("--ratio", c.ratio, "Kept fraction of samples")->check(CLI::Range(0.0, 1.0));
        s->add_option("--scheme", scheme_name, "Mask scheme: uniform | variable-density");
        s->add_option("--power", c.power, "Radial density exponent of the variable-density scheme");
        s->add_option("--levels", c.levels, "Decomposition levels");
    };
    auto add_recon = [&](CLI::App* s) {
        s->add_option("input", c.input, "Input image (binary PGM or raw float grid); default: bundled fixture");
        s->add_option("--fixture", c.fixture, "Bundled fixture: texture (photographic-style, default) | phantom");
        s->add_option("--size", c.size, "Fixture size in pixels");
        s->add_flag("--eight-bit", c.eight_bit, "Quantise the fixture to 8-bit values (0..255)");
        s->add_option("--domain", domain_name, "Sensing domain: frequency | physical");
        s->add_option("--sigma", c.sigma, "Measurement noise standard deviation")->check(CLI::NonNegativeNumber);
        s->add_option("--lambda", c.lambda, "Absolute threshold (overrides --lambda-factor)");
        s->add_option("--lambda-factor", c.lambda_factor,
                      "Threshold as a fraction of the largest zero-filled detail magnitude");
        s->add_option("--lambda-decay", c.lambda_decay, "Decay the threshold linearly to this fraction by --max-iter");
        s->add_option("--epsilon", c.epsilon, "Stop when the relative change falls below this");
        s->add_option("--max-iter", c.max_iter, "Iteration cap");
        s->add_flag("--crop", c.crop, "Center-crop the input to power-of-two dimensions");
        s->add_option("--out-dir", c.out_dir, "Directory for images, traces and CSV files");
        s->add_option("--csv", c.csv, "CSV output path (default inside --out-dir)");
        add_mask(s);
        add_seed(s);
    };

    CLI::App* coh = app.add_subcommand("coherence", "Monte-Carlo mutual coherence under a masked Fourier sensing basis");
    coh->add_option("--kind,--kinds", kind_names, "Transforms, or 'all'")->delimiter(',');
    coh->add_option("--size", c.size, "Image size (square, power of two)");
    coh->add_option("--trials", c.trials, "Monte-Carlo trials L");
    coh->add_option("--batch", c.batch, "Atoms per trial (0: every atom)");
    coh->add_option("--level", c.level, "Level whose diagonal subbands supply atoms");
    coh->add_flag("--all-subbands", c.all_subbands, "Draw atoms from every detail subband of every level");
    coh->add_flag("--per-trial", c.per_trial, "Also write per-trial maxima v_i");
    coh->add_option("--out-dir", c.out_dir, "Output directory");
    coh->add_option("--csv", c.csv, "CSV output path (default <out-dir>/coherence.csv)");
    add_mask(coh);
    add_seed(coh);

    CLI::App* rec = app.add_subcommand("reconstruct", "POCS reconstruction with one transform");
    rec->add_option("--kind", kind_names, "Transform: dwt | dt | dd | ddt-real | ddt-complex");
    add_recon(rec);

    CLI::App* sw = app.add_subcommand("sweep", "Reconstruct the same measurements with every transform");
    sw->add_option("--kind,--kinds", kind_names, "Transforms, or 'all'")->delimiter(',');
    add_recon(sw);

    CLI::App* met = app.add_subcommand("metrics", "RMS error and SNR of an image against a reference");
    met->add_option("reference", c.reference, "Reference image")->required();
    met->add_option("candidate", c.candidate, "Image to evaluate")->required();
    met->add_option("--csv", c.csv, "Also write the result here");

    try {
        c.seed = default_seed();
        c.epsilon = kDefaultEpsilon;
        c.max_iter = kDefaultMaxIter;
        c.lambda_factor = kDefaultLambdaFactor;
        std::vector<std::string> rev(args.rbegin(), args.rend());
        if (!rev.empty()) rev.pop_back();
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        c.command = sub->get_name();
        if (c.command != "metrics") {
            c.domain = parse_domain(domain_name);
            if (!scheme_name.empty()) {
                c.scheme = parse_scheme(scheme_name);
            } else {
                c.scheme = (c.command != "coherence" && c.domain == Domain::Frequency) ? kDefaultFrequencyScheme
                                                                                       : MaskScheme::Uniform;
            }
            if (kind_names.empty()) kind_names = {c.command == "reconstruct" ? "dt" : "all"};
            c.kinds = parse_kinds(kind_names, c.command == "coherence");
        }
        out << config_json(c).dump() << "\n";
        if (c.command == "coherence") return cmd_coherence(c, out);
        if (c.command == "reconstruct") return cmd_reconstruct(c, out);
        if (c.command == "sweep") return cmd_sweep(c, out, err);
        return cmd_metrics(c, out);
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const ParseError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumerical;
    }
}

}  // namespace oversparse::cli
