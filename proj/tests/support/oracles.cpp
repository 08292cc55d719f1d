#include "oracles.hpp"

#include <algorithm>
#include <cmath>

#include "semfeat/synth.hpp"

namespace oracle {

using semfeat::SegmentationMask;

long double raw_moment(const SegmentationMask& mask, int category, int p, int q) {
    long double sum = 0;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c) != category) continue;
            sum += std::pow(static_cast<long double>(c + 1), p) * std::pow(static_cast<long double>(r + 1), q);
        }
    }
    return sum;
}

CentralSum central_moment(const SegmentationMask& mask, int category, int p, int q) {
    long double n = 0, sx = 0, sy = 0;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c) != category) continue;
            n += 1;
            sx += c + 1;
            sy += r + 1;
        }
    }
    CentralSum out;
    if (n == 0) return out;
    const long double cx = sx / n, cy = sy / n;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c) != category) continue;
            const long double term = std::pow((c + 1) - cx, p) * std::pow((r + 1) - cy, q);
            out.value += term;
            out.magnitude += std::fabs(term);
        }
    }
    return out;
}

std::array<long double, 10> raw_moments(const SegmentationMask& mask, int category) {
    std::array<long double, 10> m{};
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c) != category) continue;
            const long double j = c + 1, i = r + 1;
            m[0] += 1;
            m[1] += j;
            m[2] += i;
            m[3] += j * j;
            m[4] += j * i;
            m[5] += i * i;
            m[6] += j * j * j;
            m[7] += j * j * i;
            m[8] += j * i * i;
            m[9] += i * i * i;
        }
    }
    return m;
}

std::array<CentralSum, 7> central_moments(const SegmentationMask& mask, int category) {
    long double n = 0, sx = 0, sy = 0;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c) != category) continue;
            n += 1;
            sx += c + 1;
            sy += r + 1;
        }
    }
    std::array<CentralSum, 7> out{};
    if (n == 0) return out;
    const long double cx = sx / n, cy = sy / n;
    constexpr int orders[7][2] = {{2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c) != category) continue;
            const long double dx = (c + 1) - cx, dy = (r + 1) - cy;
            for (int k = 0; k < 7; ++k) {
                long double term = 1;
                for (int e = 0; e < orders[k][0]; ++e) term *= dx;
                for (int e = 0; e < orders[k][1]; ++e) term *= dy;
                out[static_cast<std::size_t>(k)].value += term;
                out[static_cast<std::size_t>(k)].magnitude += std::fabs(term);
            }
        }
    }
    return out;
}

std::array<long double, 7> hu(long double n20, long double n11, long double n02, long double n30, long double n21,
                              long double n12, long double n03) {
    std::array<long double, 7> h{};
    h[0] = n20 + n02;
    h[1] = (n20 - n02) * (n20 - n02) + 4 * n11 * n11;
    h[2] = (n30 - 3 * n12) * (n30 - 3 * n12) + (3 * n21 - n03) * (3 * n21 - n03);
    h[3] = (n30 + n12) * (n30 + n12) + (n21 + n03) * (n21 + n03);
    h[4] = (n30 - 3 * n12) * (n30 + n12) * ((n30 + n12) * (n30 + n12) - 3 * (n21 + n03) * (n21 + n03)) +
           (3 * n21 - n03) * (n21 + n03) * (3 * (n30 + n12) * (n30 + n12) - (n21 + n03) * (n21 + n03));
    h[5] = (n20 - n02) * ((n30 + n12) * (n30 + n12) - (n21 + n03) * (n21 + n03)) +
           4 * n11 * (n30 + n12) * (n21 + n03);
    h[6] = (3 * n21 - n03) * (n30 + n12) * ((n30 + n12) * (n30 + n12) - 3 * (n21 + n03) * (n21 + n03)) -
           (n30 - 3 * n12) * (n21 + n03) * (3 * (n30 + n12) * (n30 + n12) - (n21 + n03) * (n21 + n03));
    return h;
}

std::array<long double, 7> hu_of(const SegmentationMask& mask, int category) {
    const long double m00 = central_moment(mask, category, 0, 0).value;
    if (m00 == 0) return {};
    const auto eta = [&](int p, int q) {
        return central_moment(mask, category, p, q).value / std::pow(m00, (p + q) / 2.0L + 1.0L);
    };
    return hu(eta(2, 0), eta(1, 1), eta(0, 2), eta(3, 0), eta(2, 1), eta(1, 2), eta(0, 3));
}

std::array<long double, 5> ssf_row(const SegmentationMask& mask, int category) {
    std::vector<long double> xs, ys;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c) != category) continue;
            xs.push_back(c + 1);
            ys.push_back(r + 1);
        }
    }
    if (xs.empty()) return {};
    const long double n = static_cast<long double>(xs.size());
    const long double w = mask.width(), h = mask.height();
    long double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    long double vx = 0, vy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        vx += (xs[k] - mx) * (xs[k] - mx);
        vy += (ys[k] - my) * (ys[k] - my);
    }
    return {n / (w * h), mx / w, my / h, std::sqrt(vx / n) / w, std::sqrt(vy / n) / h};
}

std::vector<std::vector<std::vector<std::uint32_t>>> sfm(const semfeat::DetectionSet& set, int bins, double rho) {
    const int n = set.categories();
    std::vector<std::vector<std::vector<std::uint32_t>>> b(
        static_cast<std::size_t>(n),
        std::vector<std::vector<std::uint32_t>>(static_cast<std::size_t>(n),
                                                std::vector<std::uint32_t>(static_cast<std::size_t>(bins), 0)));
    const auto dets = set.detections();
    const double diagonal = std::sqrt(static_cast<double>(set.image_width()) * set.image_width() +
                                      static_cast<double>(set.image_height()) * set.image_height());
    for (std::size_t a = 0; a < dets.size(); ++a) {
        for (std::size_t c = 0; c < dets.size(); ++c) {
            if (a == c) continue;
            const double ax = (dets[a].box.x_min + dets[a].box.x_max) / 2, ay = (dets[a].box.y_min + dets[a].box.y_max) / 2;
            const double cx = (dets[c].box.x_min + dets[c].box.x_max) / 2, cy = (dets[c].box.y_min + dets[c].box.y_max) / 2;
            const double d = std::sqrt((ax - cx) * (ax - cx) + (ay - cy) * (ay - cy));
            int k = static_cast<int>(std::ceil(rho * d / diagonal));
            k = std::max(1, std::min(bins, k));
            ++b[static_cast<std::size_t>(dets[a].category - 1)][static_cast<std::size_t>(dets[c].category - 1)]
               [static_cast<std::size_t>(k - 1)];
        }
    }
    return b;
}

// ---------------------------------------------------------------------------

SegmentationMask random_mask(semfeat::Rng& rng, int width, int height, int categories) {
    std::vector<semfeat::CategoryIndex> px(static_cast<std::size_t>(width) * height);
    const double void_share = rng.uniform(0.0, 0.5);
    for (auto& v : px) {
        v = rng.uniform() < void_share ? 0 : static_cast<semfeat::CategoryIndex>(rng.uniform_int(1, categories));
    }
    const int blocks = static_cast<int>(rng.uniform_int(0, 4));
    for (int b = 0; b < blocks; ++b) {
        const int x0 = static_cast<int>(rng.uniform_int(0, width - 1));
        const int y0 = static_cast<int>(rng.uniform_int(0, height - 1));
        const int x1 = static_cast<int>(rng.uniform_int(x0, width - 1));
        const int y1 = static_cast<int>(rng.uniform_int(y0, height - 1));
        const auto cat = static_cast<semfeat::CategoryIndex>(rng.uniform_int(0, categories));
        for (int r = y0; r <= y1; ++r)
            for (int c = x0; c <= x1; ++c) px[static_cast<std::size_t>(r) * width + c] = cat;
    }
    return SegmentationMask(width, height, categories, std::move(px));
}

semfeat::DetectionSet random_detections(semfeat::Rng& rng, int width, int height, int categories, int max_count) {
    std::vector<semfeat::Detection> dets;
    const int count = static_cast<int>(rng.uniform_int(0, max_count));
    for (int k = 0; k < count; ++k) {
        semfeat::Detection d;
        d.category = static_cast<int>(rng.uniform_int(1, categories));
        // Some boxes are snapped to a coarse grid so coincident centers and exact bin edges occur.
        const bool snapped = rng.bernoulli(0.3);
        double x0 = rng.uniform(0, width), x1 = rng.uniform(0, width);
        double y0 = rng.uniform(0, height), y1 = rng.uniform(0, height);
        if (snapped) {
            x0 = std::floor(x0 / 8) * 8;
            x1 = std::floor(x1 / 8) * 8;
            y0 = std::floor(y0 / 8) * 8;
            y1 = std::floor(y1 / 8) * 8;
        }
        d.box = {std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1)};
        d.confidence = rng.uniform(0.2, 1.0);
        dets.push_back(d);
    }
    return semfeat::DetectionSet(width, height, categories, std::move(dets));
}

SegmentationMask random_shape(semfeat::Rng& rng, int frame, double min_half, double max_half, double min_aspect) {
    semfeat::synth::Shape s;
    s.family = static_cast<semfeat::synth::ShapeFamily>(rng.uniform_int(0, 2));
    s.center_x = frame / 2.0 + rng.uniform(-2, 2);
    s.center_y = frame / 2.0 + rng.uniform(-2, 2);
    s.half_width = rng.uniform(min_half, max_half);
    s.half_height = s.half_width * rng.uniform(min_aspect, min_aspect + 1.0);
    if (rng.bernoulli(0.5)) std::swap(s.half_width, s.half_height);
    s.angle = rng.uniform(0, 6.283185307179586);
    return semfeat::synth::render(frame, frame, 1, {{s, 1}});
}

}  // namespace oracle
