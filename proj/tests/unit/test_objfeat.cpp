#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "semfeat/error.hpp"
#include "semfeat/objfeat.hpp"

using namespace semfeat;

namespace {

Detection at(int category, double cx, double cy, double half = 1.0) {
    return Detection{category, {cx - half, cy - half, cx + half, cy + half}, 0.9};
}

}  // namespace

TEST_CASE("sfv counts per category") {
    CHECK(sfv(DetectionSet(10, 10, 4)).total() == 0);
    const DetectionSet set(10, 10, 4, {at(1, 2, 2), at(1, 3, 3), at(1, 5, 5), at(2, 6, 6)});
    const Sfv v = sfv(set);
    CHECK(v.count(1) == 3);
    CHECK(v.count(2) == 1);
    CHECK(v.count(3) == 0);
    CHECK(v.count(4) == 0);
    CHECK(sfv(DetectionSet(640, 480, 80)).categories() == 80);
}

TEST_CASE("zero detections give the all-zero tensor") {
    const Sfm m = sfm(DetectionSet(100, 100, 5));
    CHECK(m.all_zero());
    CHECK(m.values().size() == 75);
}

TEST_CASE("half-diagonal distance lands in bin 2") {
    // 80x60 frame: diagonal 100; centers (20, 15) and (60, 45) are 50 apart.
    const DetectionSet set(80, 60, 2, {at(1, 20, 15), at(2, 60, 45)});
    CHECK(distance_bin(50.0, 100.0, SfmParams{}) == 2);
    const Sfm m = sfm(set, SfmParams{3, 3.0});
    for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
            for (int k = 1; k <= 3; ++k) {
                const bool expected = (i != j) && k == 2;
                CHECK(m.at(i, j, k) == (expected ? 1u : 0u));
            }
}

TEST_CASE("coincident same-category centers count both ordered pairs in bin 1") {
    const DetectionSet set(50, 50, 3, {at(2, 10, 10), at(2, 10, 10, 4.0)});
    const Sfm m = sfm(set);
    CHECK(m.at(2, 2, 1) == 2);
    std::uint64_t total = 0;
    for (auto v : m.values()) total += v;
    CHECK(total == 2);
    // a lone detection pairs with nothing
    CHECK(sfm(DetectionSet(50, 50, 3, {at(1, 5, 5)})).all_zero());
}

TEST_CASE("bin clamping and parameter errors") {
    CHECK(distance_bin(0.0, 10.0, {}) == 1);
    CHECK(distance_bin(10.0, 10.0, {}) == 3);
    CHECK(distance_bin(10.0, 10.0, {3, 6.0}) == 3);
    CHECK(distance_bin(10.0 / 3.0, 10.0, {}) == 1);
    CHECK_THROWS_AS(sfm(DetectionSet(10, 10, 1), SfmParams{0, 3.0}), ConfigError);
    CHECK_THROWS_AS(sfm(DetectionSet(10, 10, 1), SfmParams{3, 0.0}), ConfigError);
    CHECK_THROWS_AS(sfm(DetectionSet(10, 10, 1), SfmParams{3, -1.0}), ConfigError);
}

TEST_CASE("symmetry, pair mass and brute-force oracle on random sets") {
    Rng rng(123);
    for (int t = 0; t < 100; ++t) {
        const int n = static_cast<int>(rng.uniform_int(1, 6));
        const int bins = static_cast<int>(rng.uniform_int(1, 5));
        const double rho = rng.uniform(0.5, 6.0);
        const DetectionSet set = oracle::random_detections(rng, 120, 90, n, 12);
        const Sfm m = sfm(set, SfmParams{bins, rho});
        const Sfv v = sfv(set);
        const auto ref = oracle::sfm(set, bins, rho);
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) {
                std::uint64_t mass = 0;
                for (int k = 1; k <= bins; ++k) {
                    CHECK(m.at(i, j, k) == m.at(j, i, k));
                    CHECK(m.at(i, j, k) == ref[i - 1][j - 1][k - 1]);
                    mass += m.at(i, j, k);
                }
                const std::uint64_t ci = v.count(i), cj = v.count(j);
                CHECK(mass == (i == j ? ci * (ci == 0 ? 0 : ci - 1) : ci * cj));
            }
        }
    }
}

TEST_CASE("translation and uniform scaling leave the tensor unchanged") {
    const DetectionSet base(100, 80, 3, {at(1, 20, 20, 3), at(2, 50, 30, 5), at(3, 30, 60, 2), at(1, 70, 40, 4)});
    std::vector<Detection> shifted, scaled;
    for (const Detection& d : base.detections()) {
        Detection s = d;
        s.box = {d.box.x_min + 8, d.box.y_min + 4, d.box.x_max + 8, d.box.y_max + 4};
        shifted.push_back(s);
        Detection z = d;
        z.box = {d.box.x_min * 2, d.box.y_min * 2, d.box.x_max * 2, d.box.y_max * 2};
        scaled.push_back(z);
    }
    CHECK(sfm(DetectionSet(100, 80, 3, shifted)) == sfm(base));
    CHECK(sfm(DetectionSet(200, 160, 3, scaled)) == sfm(base));
}
