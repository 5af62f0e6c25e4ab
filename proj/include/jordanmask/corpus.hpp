#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jordanmask/grid.hpp"
#include "jordanmask/jordan.hpp"
#include "jordanmask/metrics.hpp"
#include "jordanmask/segment.hpp"

namespace jordanmask {

using ordered_json = nlohmann::ordered_json;

/// One image of a `<root>/<class>/<n>.<ext>` corpus, with its `<n>.png` mask
/// when present. Images are .jpg, .jpeg or .pgm.
struct CorpusEntry {
    std::string class_name;
    std::string entry_id;
    std::optional<std::filesystem::path> image_path;
    std::optional<std::filesystem::path> mask_path;
};

/// Entries sorted by (class, entry). A stem with only a .png counts as a
/// mask-only entry. Throws IoError if root is not a directory.
std::vector<CorpusEntry> scan_corpus(const std::filesystem::path& root);

/// Name of the pseudo-method that evaluates the ground-truth mask itself.
inline constexpr const char* kAnnotationMethod = "annotation";

struct EvalRecord {
    std::string class_name;
    std::string entry_id;
    std::string method;
    std::optional<MetricsReport> metrics;
    BettiProfile betti_s;
    int complement_b0 = 0;
    JordanCategory verdict = JordanCategory::EmptyCandidate;
    std::size_t curve_points = 0;
    double elapsed_ms = 0.0;
    /// Set for entries that failed; the remaining fields are then meaningless.
    std::optional<std::string> error;
};

struct EvaluateOptions {
    std::vector<Method> methods{Method::Otsu, Method::RidlerCalvard, Method::KMeans,
                                Method::Watershed};
    std::optional<Size> resize = Size{64, 64};
    JordanOptions jordan;
    PolarityMode polarity = PolarityMode::Auto;
    unsigned workers = 1;
    /// Record wall-clock time per record; off keeps reports byte-stable.
    bool timing = false;
};

/// Evaluates every entry under the annotation and each method. Per-record
/// failures become error records. Output is sorted by (class, entry, method).
std::vector<EvalRecord> evaluate_corpus(const std::vector<CorpusEntry>& entries,
                                        const EvaluateOptions& opts);

/// Evaluates one (prediction, optional ground truth) pair.
EvalRecord evaluate_mask(const BinaryImage& pred, const std::optional<BinaryImage>& gt,
                         const JordanOptions& opts);

/// Fixed field order: class, entry, method, metrics, betti_s, complement_b0,
/// verdict, curve_points, elapsed_ms. Error records carry class, entry, method, error.
ordered_json to_json(const EvalRecord& r);
ordered_json to_json(const MetricsReport& m);

std::string csv_header();
std::string to_csv_row(const EvalRecord& r);

/// Per-method means of defined metrics, undefined counts, and verdict histograms.
ordered_json summarize(const std::vector<EvalRecord>& records, std::size_t entry_count);

enum class ReportFormat { Jsonl, Csv, Both };

std::optional<ReportFormat> parse_report_format(const std::string& text);

/// Writes records.jsonl / records.csv (per format) and summary.json into dir.
void write_reports(const std::vector<EvalRecord>& records, const ordered_json& summary,
                   const std::filesystem::path& dir, ReportFormat format);

/// Verdict of a single mask as printed by the `check` command.
ordered_json verdict_to_json(const JordanVerdict& v);

/// Worker count: hardware concurrency capped by JORDAN_MASK_THREADS when set.
unsigned default_worker_count();

/// RGB rendering of the padded image: complement components in flat palette
/// tints (stronger inside the mask), the curve candidate in solid red.
RawImage render_overlay(const GrayImage& img, const BinaryImage& mask, const JordanOptions& opts);

}  // namespace jordanmask
