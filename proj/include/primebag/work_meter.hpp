#pragma once

#include <cstdint>

namespace primebag {

// Thread-local operation counter. Instrumented code calls work_add at the
// unit it considers one step: an entry visit in a bag merge, a trial
// division, a rho iteration, a schoolbook digit operation. The benchmark
// harness reads deltas around calls; results are deterministic for a fixed
// seed, unlike wall time.
inline thread_local std::uint64_t work_ticks = 0;

inline void work_add(std::uint64_t n = 1) noexcept { work_ticks += n; }

inline std::uint64_t work_now() noexcept { return work_ticks; }

// Scoped delta reader.
class WorkScope {
public:
    WorkScope() : start_(work_ticks) {}
    std::uint64_t elapsed() const noexcept { return work_ticks - start_; }

private:
    std::uint64_t start_;
};

} // namespace primebag
