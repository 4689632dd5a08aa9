#pragma once

// Deterministic summation.  Values are accumulated by a binary-counter
// pairwise tree in push order; the parallel form fixes a block size and folds
// block sums in block-index order, so the result does not depend on how many
// worker threads ran.

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace fracparts {

// Worker cap: FRACPARTS_THREADS if set, else hardware concurrency, at least 1.
inline int thread_cap() {
    if (const char* env = std::getenv("FRACPARTS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Pairwise (tree) accumulator: add() maintains one partial per binary digit of
// the running count, total() folds the partials from most recent to oldest.
class PairwiseSum {
public:
    void add(double v) {
        std::uint64_t mask = ++count_;
        while (!(mask & 1ull)) {
            v += stack_.back();
            stack_.pop_back();
            mask >>= 1;
        }
        stack_.push_back(v);
    }

    double total() const {
        double s = 0.0;
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) s += *it;
        return s;
    }

    std::uint64_t count() const { return count_; }

private:
    std::vector<double> stack_;
    std::uint64_t count_ = 0;
};

inline constexpr std::uint64_t kReduceBlock = 1ull << 16;

// Deterministic parallel sum of f(0..n-1): per-block pairwise sums (block size
// fixed), block values folded pairwise in block order.
template <class F>
double det_parallel_sum(std::uint64_t n, F&& f) {
    if (n == 0) return 0.0;
    std::uint64_t nblocks = (n + kReduceBlock - 1) / kReduceBlock;
    std::vector<double> block_sum(nblocks, 0.0);

    // each worker owns a copy of f, so functors may keep scratch buffers
    auto run_blocks = [&block_sum, n](std::uint64_t first, std::uint64_t stride,
                                      std::uint64_t count, std::decay_t<F> fn) {
        for (std::uint64_t b = first; b < count; b += stride) {
            PairwiseSum ps;
            std::uint64_t lo = b * kReduceBlock;
            std::uint64_t hi = lo + kReduceBlock < n ? lo + kReduceBlock : n;
            for (std::uint64_t i = lo; i < hi; ++i) ps.add(fn(i));
            block_sum[b] = ps.total();
        }
    };

    int workers = thread_cap();
    if (workers <= 1 || nblocks == 1) {
        run_blocks(0, 1, nblocks, f);
    } else {
        std::vector<std::thread> pool;
        int w = workers < static_cast<int>(nblocks) ? workers : static_cast<int>(nblocks);
        for (int t = 0; t < w; ++t)
            pool.emplace_back(run_blocks, static_cast<std::uint64_t>(t),
                              static_cast<std::uint64_t>(w), nblocks, f);
        for (auto& th : pool) th.join();
    }

    PairwiseSum fold;
    for (std::uint64_t b = 0; b < nblocks; ++b) fold.add(block_sum[b]);
    return fold.total();
}

}  // namespace fracparts
