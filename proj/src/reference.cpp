#include "semfeat/reference.hpp"

namespace semfeat::reference {

MomentSet multipass_raw_moments(const SegmentationMask& mask) {
    MomentSet out(mask.categories(), mask.width(), mask.height());
    for (int n = 1; n <= mask.categories(); ++n) {
        auto& m = out.category(n).raw;
        for (int r = 0; r < mask.height(); ++r) {
            const std::uint64_t i = static_cast<std::uint64_t>(r) + 1;
            const auto row = mask.row(r);
            for (int col = 0; col < mask.width(); ++col) {
                if (row[col] != n) continue;
                const std::uint64_t j = static_cast<std::uint64_t>(col) + 1;
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
        out.category(n).present = m[0] > 0;
    }
    return out;
}

}  // namespace semfeat::reference
