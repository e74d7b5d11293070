#include "wsm/jets/layout.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <string>

#include "wsm/errors.hpp"

namespace wsm::jets {

namespace {

int pack(const mono& m, int base) {
    int key = 0;
    for (int i = max_vars - 1; i >= 0; --i) key = key * base + m[i];
    return key;
}

std::unique_ptr<layout> build(int num_vars, int degree) {
    auto lay = std::make_unique<layout>();
    lay->num_vars = num_vars;
    lay->degree = degree;

    // Enumerate exponent tuples, then graded-lex sort.
    std::vector<mono> monos;
    mono cur{};
    const int base = degree + 1;
    for (;;) {
        int total = 0;
        for (int i = 0; i < num_vars; ++i) total += cur[i];
        if (total <= degree) monos.push_back(cur);
        int i = 0;
        while (i < num_vars && cur[i] == static_cast<std::uint8_t>(degree)) cur[i++] = 0;
        if (i == num_vars) break;
        ++cur[i];
    }
    std::sort(monos.begin(), monos.end(), [&](const mono& a, const mono& b) {
        int ta = 0, tb = 0;
        for (int i = 0; i < max_vars; ++i) { ta += a[i]; tb += b[i]; }
        if (ta != tb) return ta < tb;
        return a < b;
    });
    lay->monos = std::move(monos);

    int span = 1;
    for (int i = 0; i < max_vars; ++i) span *= base;
    lay->rank.assign(span, -1);
    for (int r = 0; r < lay->size(); ++r) lay->rank[pack(lay->monos[r], base)] = static_cast<std::int16_t>(r);

    // Convolution plan, bucketed per output rank.
    std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> buckets(lay->size());
    for (int p = 0; p < lay->size(); ++p) {
        for (int q = 0; q < lay->size(); ++q) {
            mono sum{};
            int total = 0;
            for (int i = 0; i < max_vars; ++i) {
                sum[i] = static_cast<std::uint8_t>(lay->monos[p][i] + lay->monos[q][i]);
                total += sum[i];
            }
            if (total > degree) continue;
            buckets[lay->rank[pack(sum, base)]].emplace_back(p, q);
        }
    }
    lay->seg.assign(lay->size() + 1, 0);
    for (int r = 0; r < lay->size(); ++r) lay->seg[r + 1] = lay->seg[r] + static_cast<std::int32_t>(buckets[r].size());
    lay->pa.reserve(lay->seg.back());
    lay->qa.reserve(lay->seg.back());
    for (const auto& bucket : buckets) {
        for (auto [p, q] : bucket) {
            lay->pa.push_back(p);
            lay->qa.push_back(q);
        }
    }
    return lay;
}

} // namespace

int layout::rank_of(const mono& m) const noexcept {
    int key = pack(m, degree + 1);
    if (key < 0 || key >= static_cast<int>(rank.size())) return -1;
    return rank[key];
}

const layout& layout::get(int num_vars, int degree) {
    if (num_vars < 1 || num_vars > max_vars || degree < 0 || degree > max_degree)
        throw error(errc::shape, "jet layout out of range: num_vars=" + std::to_string(num_vars) +
                                     " degree=" + std::to_string(degree));
    static std::unique_ptr<layout> cache[max_vars][max_degree + 1];
    static std::once_flag flags[max_vars][max_degree + 1];
    auto& slot = cache[num_vars - 1][degree];
    std::call_once(flags[num_vars - 1][degree], [&] { slot = build(num_vars, degree); });
    return *slot;
}

int layout_size(int num_vars, int degree) { return layout::get(num_vars, degree).size(); }

} // namespace wsm::jets
