#include "halfspace/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace halfspace {

namespace {

std::atomic<unsigned> g_threads{1};
thread_local bool t_inside = false;

}  // namespace

void set_thread_count(unsigned count) { g_threads = std::max(1u, count); }

unsigned thread_count() { return g_threads; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(g_threads, count));
    if (workers <= 1 || t_inside) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        t_inside = true;
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        t_inside = false;
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace halfspace
