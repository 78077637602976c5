#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace vlftbc {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic per-task substream; independent of scheduling order.
class RngStream {
  public:
    explicit RngStream(uint64_t seed) : gen_(splitmix64(seed)) {}
    static RngStream derive(uint64_t seed, uint64_t index) {
        return RngStream(splitmix64(seed ^ splitmix64(index + 0x51ed2701ULL)));
    }

    double uniform01() {
        // 53-bit mantissa; identical across platforms for a given engine state
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    int categorical(const std::vector<double>& probs) {
        double u = uniform01();
        double acc = 0.0;
        for (size_t i = 0; i + 1 < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size() - 1);
    }

    uint64_t next() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

// Worker count: VLFTBC_THREADS when set, hardware concurrency otherwise.
int worker_count();

// Static partition of [0, n) across workers. Each index is processed exactly
// once; callers write results into index-owned slots, so the outcome does not
// depend on the thread count.
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace vlftbc
