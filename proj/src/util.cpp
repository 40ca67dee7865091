#include "swirlmhd/util.hpp"

#include <charconv>
#include <cstdlib>
#include <thread>
#include <vector>

namespace swirlmhd {

int worker_count() {
    static const int n = [] {
        const char* env = std::getenv("SWIRLMHD_THREADS");
        if (env == nullptr) return 1;
        const int requested = std::atoi(env);
        const int hw = static_cast<int>(std::thread::hardware_concurrency());
        if (requested < 1) return 1;
        return std::min(requested, hw > 0 ? hw : 1);
    }();
    return n;
}

void parallel_for(int n, const std::function<void(int, int)>& fn) {
    const int workers = std::min(worker_count(), n > 0 ? n : 1);
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fn, begin, end);
    }
    for (auto& t : pool) t.join();
}

std::string format_double(double v) {
    char buf[40];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace swirlmhd
