#include "mwt/cli.hpp"

#include "mwt/image2d.hpp"
#include "mwt/imageio.hpp"
#include "mwt/metrics.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace mwt {

namespace {

// Re-throws with the failing stage named, so command errors read
// "bench: decompose: ...".
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(name) + ": " + e.what());
    }
}

ImageBuffer read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char magic[6] = {};
    in.read(magic, sizeof(magic));
    if (in.gcount() >= 2 && magic[0] == 'P' && magic[1] == '5') return read_pgm(path);
    if (in.gcount() >= 6 && std::string(magic, 6) == "SIMPLE") return read_fits(path);
    throw std::runtime_error("unrecognized image format (expected PGM P5 or FITS): " +
                             path.string());
}

ImageBuffer crop_to_even(const ImageBuffer& img) {
    const int w = img.width - img.width % 2;
    const int h = img.height - img.height % 2;
    if (w == img.width && h == img.height) return img;
    ImageBuffer out = make_image(w, h, img.peak);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.at(x, y) = img.at(x, y);
    return out;
}

ImageBuffer load_input(const RunConfig& cfg) {
    ImageBuffer img = read_image(cfg.input);
    if (cfg.crop_even) img = crop_to_even(img);
    return img;
}

SubbandPyramid decompose_any(const ImageBuffer& img, const FilterVariant& filter, int levels) {
    return std::visit([&](const auto& f) { return decompose2d(img, f, levels); }, filter);
}

ImageBuffer reconstruct_any(const SubbandPyramid& pyr, const FilterVariant& filter, double peak) {
    return std::visit([&](const auto& f) { return reconstruct2d(pyr, f, peak); }, filter);
}

std::string fmt_residual(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// Opens cfg.output when set, otherwise falls back to the given stream.
class CsvSink {
public:
    CsvSink(const RunConfig& cfg, std::ostream& fallback) : stream_(&fallback) {
        if (!cfg.output.empty()) {
            file_.open(cfg.output, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output " + cfg.output.string());
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }
    void finish() {
        if (file_.is_open()) {
            file_.close();
            if (!file_) throw std::runtime_error("write failed");
        }
    }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

}  // namespace

const std::vector<std::string>& shipped_filter_names() {
    static const std::vector<std::string> names = {"haar", "db4", "haar-multi", "db4-multi",
                                                   "ghm"};
    return names;
}

FilterVariant make_filter(const std::string& name) {
    if (name == "haar") return haar_scalar();
    if (name == "db4") return db4_scalar();
    if (name == "haar-multi") return double_shift_multifilter(haar_scalar());
    if (name == "db4-multi") return double_shift_multifilter(db4_scalar());
    if (name == "ghm") return ghm_multifilter();
    std::string known;
    for (const std::string& n : shipped_filter_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown filter '" + name + "' (known filters: " + known + ")");
}

int cmd_decompose(const RunConfig& cfg, std::ostream& err) {
    try {
        const ImageBuffer img = stage("read input", [&] { return load_input(cfg); });
        const FilterVariant filter = make_filter(cfg.filter);
        const SubbandPyramid pyr =
            stage("transform", [&] { return decompose_any(img, filter, cfg.levels); });
        stage("write pyramid", [&] { save_pyramid(pyr, cfg.output); });
        return 0;
    } catch (const std::exception& e) {
        err << "decompose: " << e.what() << '\n';
        return 1;
    }
}

int cmd_reconstruct(const RunConfig& cfg, std::ostream& err) {
    try {
        const SubbandPyramid pyr = stage("read pyramid", [&] { return load_pyramid(cfg.input); });
        const std::string name = cfg.filter.empty() ? pyr.bank_name : cfg.filter;
        const FilterVariant filter = make_filter(name);
        const ImageBuffer img =
            stage("inverse transform", [&] { return reconstruct_any(pyr, filter, cfg.peak); });
        const std::size_t clamped = stage("write image", [&] { return write_pgm(img, cfg.output); });
        if (clamped > 0)
            err << "reconstruct: warning: " << clamped << " samples clamped to [0, "
                << static_cast<long>(cfg.peak) << "]\n";
        return 0;
    } catch (const std::exception& e) {
        err << "reconstruct: " << e.what() << '\n';
        return 1;
    }
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const ImageBuffer img = stage("read input", [&] { return load_input(cfg); });
        const FilterVariant filter = make_filter(cfg.filter);

        CsvSink sink(cfg, out);
        write_metrics_csv_header(sink.get());
        for (int level = 1; level <= cfg.levels; ++level) {
            const SubbandPyramid pyr =
                stage("decompose", [&] { return decompose_any(img, filter, level); });
            const SubbandPyramid truncated =
                stage("approx_only", [&] { return approx_only(pyr, level); });
            const ImageBuffer rec =
                stage("reconstruct", [&] { return reconstruct_any(truncated, filter, cfg.peak); });
            const MetricsReport m = stage("metrics", [&] { return compare(img, rec, cfg.peak); });
            write_metrics_csv_row(sink.get(), level, cfg.filter, m.mse, m.psnr_db);
        }
        sink.finish();
        return 0;
    } catch (const std::exception& e) {
        err << "bench: " << e.what() << '\n';
        return 1;
    }
}

int cmd_freq(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const FilterVariant filter = make_filter(cfg.filter);
        const auto* bank = std::get_if<MultiFilterBank>(&filter);
        if (bank == nullptr)
            throw std::invalid_argument(
                "filter '" + cfg.filter +
                "' is scalar; freq needs a multiwavelet bank (haar-multi, db4-multi, ghm)");

        const auto table = frequency_response(*bank, cfg.points);
        CsvSink sink(cfg, out);
        write_frequency_csv(sink.get(), table);
        sink.finish();
        return 0;
    } catch (const std::exception& e) {
        err << "freq: " << e.what() << '\n';
        return 1;
    }
}

int run_verify(const std::vector<FilterVariant>& filters, double tolerance, std::ostream& out) {
    int failures = 0;
    for (const FilterVariant& filter : filters) {
        const bool is_bank = std::holds_alternative<MultiFilterBank>(filter);
        std::vector<ShiftResidual> residuals;
        OrthogonalityReport rep;
        std::string name;
        if (is_bank) {
            const auto& bank = std::get<MultiFilterBank>(filter);
            name = bank.name;
            residuals = orthogonality_residuals(bank);
            rep = verify_orthogonality(bank, tolerance);
            out << "filter " << name << ": multiwavelet bank, " << bank.taps()
                << " taps, tolerance " << fmt_residual(tolerance) << '\n';
        } else {
            const auto& f = std::get<ScalarFilter>(filter);
            name = f.name;
            residuals = scalar_orthonormality_residuals(f);
            rep = verify_scalar_orthonormality(f, tolerance);
            out << "filter " << name << ": scalar, " << f.length() << " taps, tolerance "
                << fmt_residual(tolerance) << '\n';
        }
        const char* labels = is_bank ? "HH GG HG" : "cc dd cd";
        for (const ShiftResidual& r : residuals)
            out << "  l=" << r.shift << "  [" << labels << "] " << fmt_residual(r.hh) << ' '
                << fmt_residual(r.gg) << ' ' << fmt_residual(r.hg) << '\n';
        out << "  max " << fmt_residual(rep.max_residual_HH) << ' '
            << fmt_residual(rep.max_residual_GG) << ' ' << fmt_residual(rep.max_residual_HG)
            << " -> " << (rep.passed ? "PASS" : "FAIL") << '\n';
        if (!rep.passed) ++failures;
    }
    out << "summary: " << (filters.size() - static_cast<std::size_t>(failures)) << " of "
        << filters.size() << " filters passed\n";
    return failures == 0 ? 0 : 1;
}

int cmd_verify(std::ostream& out) {
    std::vector<FilterVariant> filters;
    for (const std::string& name : shipped_filter_names()) filters.push_back(make_filter(name));
    return run_verify(filters, 1e-10, out);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orthogonal multiwavelet transforms for 16-bit astronomical images"};
    app.require_subcommand(1);

    RunConfig cfg;
    int peak = 255;

    auto* decompose = app.add_subcommand("decompose", "transform an image into a pyramid file");
    decompose->add_option("--input", cfg.input, "input image (PGM or FITS)")->required();
    decompose->add_option("--filter", cfg.filter, "filter name")->required();
    decompose->add_option("--levels", cfg.levels, "decomposition levels")->required();
    decompose->add_option("--output", cfg.output, "pyramid file to write")->required();
    decompose->add_flag("--crop-even", cfg.crop_even, "crop odd trailing row/column");

    auto* reconstruct = app.add_subcommand("reconstruct", "rebuild an image from a pyramid file");
    reconstruct->add_option("--input", cfg.input, "pyramid file")->required();
    reconstruct->add_option("--output", cfg.output, "PGM file to write")->required();
    reconstruct->add_option("--filter", cfg.filter,
                            "filter name (defaults to the one recorded in the pyramid)");
    reconstruct->add_option("--peak", peak, "output peak value")
        ->check(CLI::IsMember({255, 65535}));

    auto* bench = app.add_subcommand("bench", "per-level truncation PSNR report (CSV)");
    bench->add_option("--input", cfg.input, "input image (PGM or FITS)")->required();
    bench->add_option("--filter", cfg.filter, "filter name")->required();
    bench->add_option("--levels", cfg.levels, "maximum level")->required();
    bench->add_option("--peak", peak, "PSNR peak value")->check(CLI::IsMember({255, 65535}));
    bench->add_option("--output", cfg.output, "CSV file (stdout when omitted)");
    bench->add_flag("--crop-even", cfg.crop_even, "crop odd trailing row/column");

    auto* freq = app.add_subcommand("freq", "matrix frequency response magnitudes (CSV)");
    freq->add_option("--filter", cfg.filter, "multiwavelet bank name")->required();
    freq->add_option("--points", cfg.points, "samples on [0, pi]")->capture_default_str();
    freq->add_option("--output", cfg.output, "CSV file (stdout when omitted)");

    auto* verify = app.add_subcommand("verify", "orthogonality report for all shipped filters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    cfg.peak = static_cast<double>(peak);
    if (decompose->parsed()) return cmd_decompose(cfg, err);
    if (reconstruct->parsed()) return cmd_reconstruct(cfg, err);
    if (bench->parsed()) return cmd_bench(cfg, out, err);
    if (freq->parsed()) return cmd_freq(cfg, out, err);
    if (verify->parsed()) return cmd_verify(out);
    return 1;
}

}  // namespace mwt
