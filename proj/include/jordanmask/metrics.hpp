#pragma once

#include <cstdint>
#include <optional>

#include "jordanmask/grid.hpp"

namespace jordanmask {

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    [[nodiscard]] std::uint64_t total() const { return tp + fp + fn + tn; }
    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Throws DimensionMismatch naming both sizes.
ConfusionCounts confusion(const BinaryImage& pred, const BinaryImage& gt);

/// Each metric is empty where its ratio is 0/0.
struct MetricsReport {
    std::optional<double> iou;
    std::optional<double> dice;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> accuracy;
};

MetricsReport compute_metrics(const ConfusionCounts& c);

}  // namespace jordanmask
