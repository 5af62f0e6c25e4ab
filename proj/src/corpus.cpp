#include "jordanmask/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "jordanmask/image_io.hpp"

namespace jordanmask {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool is_image_extension(const std::string& ext) {
    return ext == ".jpg" || ext == ".jpeg" || ext == ".pgm";
}

}  // namespace

std::vector<CorpusEntry> scan_corpus(const fs::path& root) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        throw IoError("corpus root " + root.string() + " is not a directory");
    }
    std::vector<fs::path> classes;
    for (const auto& d : fs::directory_iterator(root)) {
        if (d.is_directory()) classes.push_back(d.path());
    }
    std::sort(classes.begin(), classes.end());

    std::vector<CorpusEntry> out;
    for (const auto& dir : classes) {
        std::map<std::string, CorpusEntry> by_stem;
        for (const auto& f : fs::directory_iterator(dir)) {
            if (!f.is_regular_file()) continue;
            const std::string ext = lower(f.path().extension().string());
            const std::string stem = f.path().stem().string();
            if (ext != ".png" && !is_image_extension(ext)) continue;
            auto& e = by_stem[stem];
            e.class_name = dir.filename().string();
            e.entry_id = stem;
            if (ext == ".png") {
                e.mask_path = f.path();
            } else if (!e.image_path || f.path() < *e.image_path) {
                e.image_path = f.path();
            }
        }
        for (auto& [stem, e] : by_stem) out.push_back(std::move(e));
    }
    return out;
}

EvalRecord evaluate_mask(const BinaryImage& pred, const std::optional<BinaryImage>& gt,
                         const JordanOptions& opts) {
    EvalRecord r;
    if (gt) r.metrics = compute_metrics(confusion(pred, *gt));
    const JordanVerdict v = evaluate(pred, opts);
    r.betti_s = v.evidence.betti_s;
    r.complement_b0 = v.evidence.complement_b0;
    r.verdict = v.category;
    r.curve_points = v.evidence.curve_points;
    return r;
}

namespace {

using Clock = std::chrono::steady_clock;

std::vector<EvalRecord> evaluate_entry(const CorpusEntry& entry, const EvaluateOptions& opts) {
    std::vector<std::string> methods;
    if (entry.image_path) {
        for (Method m : opts.methods) methods.emplace_back(to_string(m));
    }
    if (entry.mask_path) methods.emplace_back(kAnnotationMethod);

    auto error_record = [&entry](const std::string& method, const std::string& what) {
        EvalRecord r;
        r.class_name = entry.class_name;
        r.entry_id = entry.entry_id;
        r.method = method;
        r.error = what;
        return r;
    };

    std::optional<GrayImage> image;
    std::optional<BinaryImage> gt;
    try {
        if (entry.mask_path) {
            gt = read_mask(*entry.mask_path);
            if (opts.resize) gt = resize_nearest(*gt, opts.resize->width, opts.resize->height);
        }
        if (entry.image_path && !opts.methods.empty()) {
            image = read_gray(*entry.image_path);
            if (opts.resize) image = resize_nearest(*image, opts.resize->width, opts.resize->height);
        }
    } catch (const std::exception& e) {
        std::vector<EvalRecord> failed;
        for (const auto& m : methods) failed.push_back(error_record(m, e.what()));
        return failed;
    }

    std::vector<EvalRecord> out;
    for (const auto& name : methods) {
        try {
            const auto start = Clock::now();
            BinaryImage pred;
            if (name == kAnnotationMethod) {
                pred = *gt;
            } else {
                SegmenterConfig cfg;
                cfg.method = *parse_method(name);
                cfg.polarity = opts.polarity;
                pred = segment(*image, cfg).mask;
            }
            EvalRecord r = evaluate_mask(pred, gt, opts.jordan);
            r.class_name = entry.class_name;
            r.entry_id = entry.entry_id;
            r.method = name;
            if (opts.timing) {
                r.elapsed_ms =
                    std::chrono::duration<double, std::milli>(Clock::now() - start).count();
            }
            out.push_back(std::move(r));
        } catch (const std::exception& e) {
            out.push_back(error_record(name, e.what()));
        }
    }
    return out;
}

}  // namespace

std::vector<EvalRecord> evaluate_corpus(const std::vector<CorpusEntry>& entries,
                                        const EvaluateOptions& opts) {
    std::vector<std::vector<EvalRecord>> per_entry(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
            per_entry[i] = evaluate_entry(entries[i], opts);
        }
    };
    const unsigned workers =
        std::max(1U, std::min<unsigned>(opts.workers, static_cast<unsigned>(entries.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::vector<EvalRecord> records;
    for (auto& batch : per_entry) {
        std::move(batch.begin(), batch.end(), std::back_inserter(records));
    }
    std::stable_sort(records.begin(), records.end(), [](const EvalRecord& a, const EvalRecord& b) {
        return std::tie(a.class_name, a.entry_id, a.method) <
               std::tie(b.class_name, b.entry_id, b.method);
    });
    return records;
}

// Serialisation -------------------------------------------------------------

namespace {

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

constexpr const char* kMetricNames[] = {"iou", "dice", "precision", "recall", "accuracy"};

std::optional<double> metric_at(const MetricsReport& m, std::size_t i) {
    switch (i) {
        case 0: return m.iou;
        case 1: return m.dice;
        case 2: return m.precision;
        case 3: return m.recall;
        default: return m.accuracy;
    }
}

constexpr JordanCategory kCategories[] = {
    JordanCategory::SingleJordan, JordanCategory::MultiObject, JordanCategory::FragmentedObject,
    JordanCategory::WithHoles,    JordanCategory::NotJordan,   JordanCategory::EmptyCandidate,
};

}  // namespace

ordered_json to_json(const MetricsReport& m) {
    ordered_json j = ordered_json::object();
    for (std::size_t i = 0; i < std::size(kMetricNames); ++i) {
        j[kMetricNames[i]] = optional_number(metric_at(m, i));
    }
    return j;
}

ordered_json to_json(const EvalRecord& r) {
    ordered_json j = ordered_json::object();
    j["class"] = r.class_name;
    j["entry"] = r.entry_id;
    j["method"] = r.method;
    if (r.error) {
        j["error"] = *r.error;
        return j;
    }
    j["metrics"] = r.metrics ? to_json(*r.metrics) : ordered_json(nullptr);
    j["betti_s"] = ordered_json::array({r.betti_s.b0, r.betti_s.b1});
    j["complement_b0"] = r.complement_b0;
    j["verdict"] = to_string(r.verdict);
    j["curve_points"] = r.curve_points;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

std::string csv_header() {
    return "class,entry,method,iou,dice,precision,recall,accuracy,betti_b0,betti_b1,"
           "complement_b0,verdict,curve_points,elapsed_ms,error";
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_csv_row(const EvalRecord& r) {
    std::string row = csv_field(r.class_name) + "," + csv_field(r.entry_id) + "," + csv_field(r.method);
    if (r.error) {
        return row + ",,,,,,,,,,,," + csv_field(*r.error);
    }
    for (std::size_t i = 0; i < std::size(kMetricNames); ++i) {
        const auto v = r.metrics ? metric_at(*r.metrics, i) : std::nullopt;
        row += "," + (v ? ordered_json(*v).dump() : std::string());
    }
    row += "," + std::to_string(r.betti_s.b0) + "," + std::to_string(r.betti_s.b1) + "," +
           std::to_string(r.complement_b0) + "," + to_string(r.verdict) + "," +
           std::to_string(r.curve_points) + "," + ordered_json(r.elapsed_ms).dump() + ",";
    return row;
}

ordered_json summarize(const std::vector<EvalRecord>& records, std::size_t entry_count) {
    struct MethodStats {
        std::size_t records = 0;
        std::size_t errors = 0;
        std::size_t without_metrics = 0;
        std::map<JordanCategory, std::size_t> verdicts;
        double sums[5] = {};
        std::size_t defined[5] = {};
        std::size_t undefined[5] = {};
    };
    std::map<std::string, MethodStats> per_method;
    std::map<JordanCategory, std::size_t> verdicts;
    std::size_t errors = 0;

    for (const auto& r : records) {
        auto& s = per_method[r.method];
        ++s.records;
        if (r.error) {
            ++s.errors;
            ++errors;
            continue;
        }
        ++s.verdicts[r.verdict];
        ++verdicts[r.verdict];
        if (!r.metrics) {
            ++s.without_metrics;
            continue;
        }
        for (std::size_t i = 0; i < 5; ++i) {
            if (auto v = metric_at(*r.metrics, i)) {
                s.sums[i] += *v;
                ++s.defined[i];
            } else {
                ++s.undefined[i];
            }
        }
    }

    auto histogram = [](const std::map<JordanCategory, std::size_t>& counts) {
        ordered_json h = ordered_json::object();
        for (JordanCategory c : kCategories) {
            if (auto it = counts.find(c); it != counts.end()) h[to_string(c)] = it->second;
        }
        return h;
    };

    ordered_json out = ordered_json::object();
    out["entries"] = entry_count;
    out["records"] = records.size();
    out["errors"] = errors;
    out["verdicts"] = histogram(verdicts);
    ordered_json methods = ordered_json::object();
    for (const auto& [name, s] : per_method) {
        ordered_json m = ordered_json::object();
        m["records"] = s.records;
        m["errors"] = s.errors;
        m["records_without_metrics"] = s.without_metrics;
        m["verdicts"] = histogram(s.verdicts);
        ordered_json means = ordered_json::object();
        ordered_json undefined = ordered_json::object();
        for (std::size_t i = 0; i < 5; ++i) {
            means[kMetricNames[i]] =
                s.defined[i] ? ordered_json(s.sums[i] / static_cast<double>(s.defined[i]))
                             : ordered_json(nullptr);
            undefined[kMetricNames[i]] = s.undefined[i];
        }
        m["metric_means"] = std::move(means);
        m["undefined_metrics"] = std::move(undefined);
        methods[name] = std::move(m);
    }
    out["methods"] = std::move(methods);
    return out;
}

std::optional<ReportFormat> parse_report_format(const std::string& text) {
    if (text == "jsonl") return ReportFormat::Jsonl;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "both") return ReportFormat::Both;
    return std::nullopt;
}

void write_reports(const std::vector<EvalRecord>& records, const ordered_json& summary,
                   const fs::path& dir, ReportFormat format) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

    auto write_text = [](const fs::path& path, const std::string& text) {
        write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    };
    if (format != ReportFormat::Csv) {
        std::string text;
        for (const auto& r : records) text += to_json(r).dump() + "\n";
        write_text(dir / "records.jsonl", text);
    }
    if (format != ReportFormat::Jsonl) {
        std::string text = csv_header() + "\n";
        for (const auto& r : records) text += to_csv_row(r) + "\n";
        write_text(dir / "records.csv", text);
    }
    write_text(dir / "summary.json", summary.dump(2) + "\n");
}

ordered_json verdict_to_json(const JordanVerdict& v) {
    const auto& ev = v.evidence;
    ordered_json j = ordered_json::object();
    j["verdict"] = to_string(v.category);
    j["betti_s"] = ordered_json::array({ev.betti_s.b0, ev.betti_s.b1});
    j["complement_b0"] = ev.complement_b0;
    j["curve_points"] = ev.curve_points;
    j["curve_components"] = ev.component_sizes;
    j["min_points_ok"] = ev.min_points_ok;
    ordered_json violations = ordered_json::array();
    for (PixelCoord p : ev.degree_violations) violations.push_back({p.x, p.y});
    j["degree_violations"] = std::move(violations);
    ordered_json nesting = ordered_json::array();
    for (const auto& n : v.nesting) {
        ordered_json e = ordered_json::object();
        e["curve"] = n.curve;
        e["container"] = n.container ? ordered_json(*n.container) : ordered_json(nullptr);
        nesting.push_back(std::move(e));
    }
    j["nesting"] = std::move(nesting);
    j["padded_size"] = ordered_json::array({v.padded.width(), v.padded.height()});
    return j;
}

unsigned default_worker_count() {
    unsigned n = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("JORDAN_MASK_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

RawImage render_overlay(const GrayImage& img, const BinaryImage& mask, const JordanOptions& opts) {
    const BinaryImage fitted =
        mask.size() == img.size() ? mask : resize_nearest(mask, img.width(), img.height());
    const JordanVerdict v = evaluate(fitted, opts);
    const GrayImage base = zero_pad(img, opts.pad);

    static constexpr std::uint8_t palette[][3] = {
        {31, 119, 180}, {44, 160, 44},  {148, 103, 189}, {255, 127, 14},
        {23, 190, 207}, {188, 189, 34}, {227, 119, 194}, {140, 86, 75},
    };
    const Size size = base.size();
    RawImage out{size.width, size.height, 3, std::vector<std::uint8_t>(size.area() * 3)};
    const auto gray = base.pixels();
    const auto in_mask = v.preprocessed.pixels();
    for (std::size_t i = 0; i < size.area(); ++i) {
        std::uint8_t* px = &out.data[3 * i];
        if (v.candidate.s.contains_index(i)) {
            px[0] = 255;
            px[1] = 0;
            px[2] = 0;
            continue;
        }
        const int region = v.complement_labels.labels[i];
        const auto& c = palette[static_cast<std::size_t>(region) % std::size(palette)];
        const unsigned alpha = in_mask[i] != 0 ? 55 : 30;
        for (int ch = 0; ch < 3; ++ch) {
            px[ch] = static_cast<std::uint8_t>((gray[i] * (100 - alpha) + c[ch] * alpha + 50) / 100);
        }
    }
    return out;
}

}  // namespace jordanmask
