#ifndef GENHILBERT_PARALLEL_HPP
#define GENHILBERT_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace genhilbert
{

/// Number of worker threads used by row-parallel loops.
inline unsigned worker_count()
{
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

///
/// Calls `body(i)` for every i in [begin, end), splitting the range into
/// contiguous blocks over worker threads. Each index is processed by exactly
/// one thread, so results written per index do not depend on thread count.
/// The first exception thrown by any block is rethrown.
///
template <typename Body>
void parallel_for(std::size_t begin, std::size_t end, Body &&body,
                  std::size_t min_block = 16)
{
    if (end <= begin)
    {
        return;
    }
    const std::size_t count = end - begin;
    const std::size_t threads =
        std::min<std::size_t>(worker_count(), (count + min_block - 1) / min_block);
    if (threads <= 1)
    {
        for (std::size_t i = begin; i < end; ++i)
        {
            body(i);
        }
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    const std::size_t block = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t)
    {
        const std::size_t lo = begin + t * block;
        const std::size_t hi = std::min(end, lo + block);
        if (lo >= hi)
        {
            break;
        }
        pool.emplace_back([&, lo, hi] {
            try
            {
                for (std::size_t i = lo; i < hi; ++i)
                {
                    body(i);
                }
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &th : pool)
    {
        th.join();
    }
    if (failure)
    {
        std::rethrow_exception(failure);
    }
}

} // namespace genhilbert

#endif
