// Command-line front end: check, segment, evaluate, overlay.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jordanmask/corpus.hpp"
#include "jordanmask/image_io.hpp"
#include "jordanmask/jordan.hpp"
#include "jordanmask/segment.hpp"

namespace jm = jordanmask;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitDegenerate = 2;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JordanFlags {
    int pad = 1;
    bool no_preprocess = false;

    void attach(CLI::App& cmd) {
        cmd.add_option("--pad", pad, "Zero-padding margin")->check(CLI::PositiveNumber);
        cmd.add_flag("--no-preprocess", no_preprocess, "Skip despeckling");
    }
    [[nodiscard]] jm::JordanOptions options() const {
        jm::JordanOptions o;
        o.pad = pad;
        o.despeckle = !no_preprocess;
        return o;
    }
};

std::optional<jm::Size> parse_resize(const std::string& text) {
    if (text.empty() || text == "none") return std::nullopt;
    try {
        return jm::parse_size(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--resize: ") + e.what());
    }
}

jm::PolarityMode parse_polarity_flag(const std::string& text) {
    if (auto p = jm::parse_polarity(text)) return *p;
    throw UsageError("--polarity: expected above, below or auto, got '" + text + "'");
}

jm::Method parse_method_flag(const std::string& text) {
    if (auto m = jm::parse_method(text)) return *m;
    throw UsageError("unknown method '" + text + "' (otsu, ridler-calvard, kmeans, watershed)");
}

std::vector<jm::Method> parse_method_list(const std::string& text) {
    std::vector<jm::Method> out;
    if (text == "none" || text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_method_flag(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jordan-segmentability checks, classical segmenters and corpus evaluation"};
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "Classify one mask and print the verdict as JSON");
    std::string check_mask;
    std::string check_resize;
    bool check_self = false;
    JordanFlags check_flags;
    check->add_option("mask", check_mask, "Mask file (PGM/PNG/JPEG, nonzero = foreground)")->required();
    check->add_option("--resize", check_resize, "Resample the mask to WxH first");
    check->add_flag("--self-check", check_self, "Cross-check Betti numbers with boundary ranks");
    check_flags.attach(*check);

    // segment
    auto* seg = app.add_subcommand("segment", "Segment an image with a classical method");
    std::string seg_image;
    std::string seg_method;
    std::string seg_out;
    std::string seg_polarity = "auto";
    std::string seg_resize;
    seg->add_option("image", seg_image, "Input image")->required();
    seg->add_option("-m,--method", seg_method, "otsu | ridler-calvard | kmeans | watershed")->required();
    seg->add_option("--out", seg_out, "Output mask (.png or .pgm)")->required();
    seg->add_option("--polarity", seg_polarity, "above | below | auto");
    seg->add_option("--resize", seg_resize, "Resample the image to WxH first");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Evaluate a <root>/<class>/<n>.{jpg,pgm} + <n>.png corpus");
    std::string ev_root;
    std::string ev_methods = "otsu,ridler-calvard,kmeans,watershed";
    std::string ev_resize = "64x64";
    std::string ev_polarity = "auto";
    std::string ev_format = "both";
    std::string ev_out;
    bool ev_strict = false;
    bool ev_timing = false;
    unsigned ev_seed = 0;
    JordanFlags ev_flags;
    ev->add_option("root", ev_root, "Corpus root")->required();
    ev->add_option("--methods", ev_methods, "Comma-separated methods, or 'none' for annotations only");
    ev->add_option("--resize", ev_resize, "WxH, or 'none' to keep native sizes");
    ev->add_option("--polarity", ev_polarity, "above | below | auto");
    ev->add_option("--format", ev_format, "jsonl | csv | both");
    ev->add_option("--out", ev_out, "Report directory")->required();
    ev->add_flag("--strict", ev_strict, "Exit nonzero when any record failed");
    ev->add_flag("--timing", ev_timing, "Record wall-clock time per record");
    ev->add_option("--seed", ev_seed, "Reserved; all methods are deterministic");
    ev_flags.attach(*ev);

    // overlay
    auto* ov = app.add_subcommand("overlay", "Render the curve candidate and complement regions");
    std::string ov_image;
    std::string ov_mask;
    std::string ov_out;
    JordanFlags ov_flags;
    ov->add_option("image", ov_image, "Grayscale or colour image")->required();
    ov->add_option("mask", ov_mask, "Mask file")->required();
    ov->add_option("--out", ov_out, "Output PNG")->required();
    ov_flags.attach(*ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*check) {
            jm::BinaryImage mask = jm::read_mask(check_mask);
            if (auto size = parse_resize(check_resize)) {
                mask = jm::resize_nearest(mask, size->width, size->height);
            }
            auto opts = check_flags.options();
            opts.self_check = check_self;
            auto j = jm::verdict_to_json(jm::evaluate(mask, opts));
            jm::ordered_json out = jm::ordered_json::object();
            out["path"] = check_mask;
            out.update(j);
            std::cout << out.dump() << "\n";
        } else if (*seg) {
            jm::SegmenterConfig cfg;
            cfg.method = parse_method_flag(seg_method);
            cfg.polarity = parse_polarity_flag(seg_polarity);
            jm::GrayImage img = jm::read_gray(seg_image);
            if (auto size = parse_resize(seg_resize)) {
                img = jm::resize_nearest(img, size->width, size->height);
            }
            const jm::Segmentation result = jm::segment(img, cfg);
            jm::write_image(result.mask, seg_out);
            std::cerr << "method=" << jm::to_string(cfg.method);
            if (result.threshold) std::cerr << " threshold=" << *result.threshold;
            std::cerr << " polarity="
                      << (result.polarity == jm::Polarity::ForegroundAbove ? "above" : "below")
                      << "\n";
        } else if (*ev) {
            jm::EvaluateOptions opts;
            opts.methods = parse_method_list(ev_methods);
            opts.resize = parse_resize(ev_resize);
            opts.polarity = parse_polarity_flag(ev_polarity);
            opts.jordan = ev_flags.options();
            opts.workers = jm::default_worker_count();
            opts.timing = ev_timing;
            const auto format = jm::parse_report_format(ev_format);
            if (!format) throw UsageError("--format: expected jsonl, csv or both");

            const auto entries = jm::scan_corpus(ev_root);
            const auto records = jm::evaluate_corpus(entries, opts);
            const auto summary = jm::summarize(records, entries.size());
            jm::write_reports(records, summary, ev_out, *format);
            std::cout << summary.dump(2) << "\n";
            if (ev_strict && summary["errors"].get<std::size_t>() > 0) return kExitIo;
        } else if (*ov) {
            const jm::GrayImage img = jm::read_gray(ov_image);
            const jm::BinaryImage mask = jm::read_mask(ov_mask);
            jm::write_png(jm::render_overlay(img, mask, ov_flags.options()), ov_out);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const jm::DegenerateInput& e) {
        std::cerr << "degenerate input: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
