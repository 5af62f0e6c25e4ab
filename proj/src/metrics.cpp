#include "jordanmask/metrics.hpp"

namespace jordanmask {

ConfusionCounts confusion(const BinaryImage& pred, const BinaryImage& gt) {
    if (pred.size() != gt.size()) {
        throw DimensionMismatch("confusion: prediction is " + to_string(pred.size()) +
                                " but ground truth is " + to_string(gt.size()));
    }
    ConfusionCounts c;
    const auto p = pred.pixels();
    const auto g = gt.pixels();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0) {
            ++(g[i] != 0 ? c.tp : c.fp);
        } else {
            ++(g[i] != 0 ? c.fn : c.tn);
        }
    }
    return c;
}

namespace {

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricsReport compute_metrics(const ConfusionCounts& c) {
    return {
        ratio(c.tp, c.tp + c.fp + c.fn),
        ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn),
        ratio(c.tp, c.tp + c.fp),
        ratio(c.tp, c.tp + c.fn),
        ratio(c.tp + c.tn, c.total()),
    };
}

}  // namespace jordanmask
