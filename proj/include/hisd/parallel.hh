#pragma once

#include <algorithm>
#include <vector>

namespace hisd
{
    /// Runs body(i) for i in [0, count). With threads <= 1 this is a plain loop,
    /// which is the serial reference every parallel result must match.
    template <typename Body>
    auto parallel_for(int count, int threads, Body && body) -> void
    {
#ifdef _OPENMP
        if (threads > 1 && count > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
            for (int i = 0 ; i < count ; ++i)
                body(i);
            return;
        }
#endif
        for (int i = 0 ; i < count ; ++i)
            body(i);
    }

    /// Maps body over [0, count) into a vector, keeping index order.
    template <typename Result, typename Body>
    auto parallel_map(int count, int threads, Body && body) -> std::vector<Result>
    {
        std::vector<Result> results(std::max(count, 0));
        parallel_for(count, threads, [&] (int i) { results[i] = body(i); });
        return results;
    }

    /// True when the library was built with OpenMP.
    auto openmp_enabled() -> bool;
}
