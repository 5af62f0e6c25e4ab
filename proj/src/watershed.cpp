#include "jordanmask/watershed.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <tuple>

#include "jordanmask/topology.hpp"

namespace jordanmask {

namespace {

constexpr Offset kRing[] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                            {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

constexpr int kLine = -1;

}  // namespace

std::vector<std::uint32_t> sobel_magnitude_sq(const GrayImage& img) {
    const int w = img.width();
    const int h = img.height();
    const auto px = img.pixels();
    auto at = [&](int x, int y) {
        x = std::clamp(x, 0, w - 1);
        y = std::clamp(y, 0, h - 1);
        return static_cast<int>(px[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) +
                                   static_cast<std::size_t>(x)]);
    };
    std::vector<std::uint32_t> out(img.size().area());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int gx = (at(x + 1, y - 1) + 2 * at(x + 1, y) + at(x + 1, y + 1)) -
                           (at(x - 1, y - 1) + 2 * at(x - 1, y) + at(x - 1, y + 1));
            const int gy = (at(x - 1, y + 1) + 2 * at(x, y + 1) + at(x + 1, y + 1)) -
                           (at(x - 1, y - 1) + 2 * at(x, y - 1) + at(x + 1, y - 1));
            out[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] =
                static_cast<std::uint32_t>(gx * gx + gy * gy);
        }
    }
    return out;
}

std::vector<int> regional_minima(Size size, const std::vector<std::uint32_t>& surface, int& count) {
    const std::size_t n = size.area();
    std::vector<int> labels(n, 0);
    std::vector<bool> visited(n, false);
    std::vector<std::size_t> plateau;
    count = 0;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (visited[seed]) continue;
        const std::uint32_t level = surface[seed];
        plateau.clear();
        plateau.push_back(seed);
        visited[seed] = true;
        bool minimum = true;
        for (std::size_t k = 0; k < plateau.size(); ++k) {
            const PixelCoord p = size.coord(plateau[k]);
            for (Offset o : kRing) {
                const PixelCoord q{p.x + o.dx, p.y + o.dy};
                if (!size.contains(q)) continue;
                const std::size_t j = size.index(q);
                if (surface[j] < level) {
                    minimum = false;
                } else if (surface[j] == level && !visited[j]) {
                    visited[j] = true;
                    plateau.push_back(j);
                }
            }
        }
        if (minimum) {
            ++count;
            for (std::size_t j : plateau) labels[j] = count;
        }
    }
    return labels;
}

WatershedResult watershed_flood(const GrayImage& img) {
    const Size size = img.size();
    const std::size_t n = size.area();
    WatershedResult out;
    out.size = size;
    out.gradient_sq = sobel_magnitude_sq(img);
    const auto& g = out.gradient_sq;
    std::vector<int> labels = regional_minima(size, g, out.basin_count);

    // Min-heap on (gradient, insertion sequence).
    using Item = std::tuple<std::uint32_t, std::uint64_t, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    std::vector<bool> queued(n, false);
    std::uint64_t sequence = 0;

    auto push_neighbors = [&](std::size_t i) {
        const PixelCoord p = size.coord(i);
        for (Offset o : kRing) {
            const PixelCoord q{p.x + o.dx, p.y + o.dy};
            if (!size.contains(q)) continue;
            const std::size_t j = size.index(q);
            if (labels[j] == 0 && !queued[j]) {
                queued[j] = true;
                queue.emplace(g[j], sequence++, j);
            }
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] > 0) push_neighbors(i);
    }
    while (!queue.empty()) {
        const std::size_t i = std::get<2>(queue.top());
        queue.pop();
        const PixelCoord p = size.coord(i);
        int basin = 0;
        bool conflict = false;
        for (Offset o : kRing) {
            const PixelCoord q{p.x + o.dx, p.y + o.dy};
            if (!size.contains(q)) continue;
            const int l = labels[size.index(q)];
            if (l <= 0) continue;
            if (basin == 0) {
                basin = l;
            } else if (l != basin) {
                conflict = true;
            }
        }
        if (conflict || basin == 0) {
            labels[i] = kLine;
        } else {
            labels[i] = basin;
            push_neighbors(i);
        }
    }

    // Pixels walled off by line pixels are never reached; they join the line.
    for (int& l : labels) l = std::max(l, 0);
    out.labels = std::move(labels);
    return out;
}

namespace {

BinaryImage classify_basins(const WatershedResult& ws, const std::vector<bool>& basin_foreground) {
    const Size size = ws.size;
    std::vector<std::uint8_t> bits(size.area(), 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const int l = ws.labels[i];
        if (l > 0) bits[i] = basin_foreground[static_cast<std::size_t>(l)] ? 1 : 0;
    }
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (ws.labels[i] != 0) continue;
        const PixelCoord p = size.coord(i);
        int neighbours = 0;
        int foreground = 0;
        for (Offset o : kRing) {
            const PixelCoord q{p.x + o.dx, p.y + o.dy};
            if (!size.contains(q)) continue;
            ++neighbours;
            const int l = ws.labels[size.index(q)];
            if (l > 0 && basin_foreground[static_cast<std::size_t>(l)]) ++foreground;
        }
        bits[i] = 2 * foreground > neighbours ? 1 : 0;
    }
    return BinaryImage(size.width, size.height, std::move(bits));
}

}  // namespace

Segmentation watershed_segment(const GrayImage& img, const SegmenterConfig& cfg) {
    if (img.width() < 3 || img.height() < 3) {
        throw DegenerateInput("watershed: image must be at least 3x3, got " + to_string(img.size()));
    }
    const WatershedResult ws = watershed_flood(img);
    const double t = otsu_threshold(Histogram::of(img));

    const auto basins = static_cast<std::size_t>(ws.basin_count);
    std::vector<std::uint64_t> sum(basins + 1, 0);
    std::vector<std::uint64_t> count(basins + 1, 0);
    const auto px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const auto l = static_cast<std::size_t>(ws.labels[i]);
        sum[l] += px[i];
        ++count[l];
    }
    std::vector<bool> bright(basins + 1, false);
    for (std::size_t b = 1; b <= basins; ++b) {
        bright[b] = static_cast<double>(sum[b]) / static_cast<double>(count[b]) > t;
    }

    auto build = [&](Polarity polarity) {
        std::vector<bool> fg(bright);
        if (polarity == Polarity::ForegroundBelow) {
            for (std::size_t b = 1; b <= basins; ++b) fg[b] = !bright[b];
        }
        return Segmentation{classify_basins(ws, fg), t, polarity};
    };

    switch (cfg.polarity) {
        case PolarityMode::Above: return build(Polarity::ForegroundAbove);
        case PolarityMode::Below: return build(Polarity::ForegroundBelow);
        case PolarityMode::Auto: break;
    }
    Segmentation above = build(Polarity::ForegroundAbove);
    const std::size_t fg = foreground_count(above.mask);
    if (fg <= img.size().area() - fg) return above;
    return build(Polarity::ForegroundBelow);
}

BinaryImage watershed_binary(const GrayImage& img, const SegmenterConfig& cfg) {
    return watershed_segment(img, cfg).mask;
}

}  // namespace jordanmask
