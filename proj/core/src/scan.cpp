#include "cmunits/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "cmunits/modarith.hpp"
#include "cmunits/padic.hpp"

namespace cmunits {

ScanReport scan_field(int d, long max_p, int threads) {
    const FieldContext& F = make_field(d);
    if (threads < 1) threads = 1;
    const auto t0 = std::chrono::steady_clock::now();

    const long lo = 5;
    const long chunk = 1024;
    const long n_chunks = max_p >= lo ? (max_p - lo) / chunk + 1 : 0;

    std::vector<std::vector<ScanRecord>> partial(n_chunks);
    std::atomic<long> next{0};
    auto worker = [&]() {
        for (;;) {
            long c = next.fetch_add(1);
            if (c >= n_chunks) return;
            const long begin = lo + c * chunk;
            const long end = std::min(begin + chunk, max_p + 1);
            for (long p = begin; p < end; ++p) {
                if (!modarith::is_prime(static_cast<uint64_t>(p))) continue;
                if (F.discriminant % p == 0) continue;
                if (modarith::legendre(F.discriminant, static_cast<uint64_t>(p)) != 1)
                    continue;
                SplitPrime sp = split_prime(F, p);
                partial[c].push_back({p, sp.pi, purely_local_test(sp, Side::pi_bar),
                                      purely_local_test(sp, Side::pi),
                                      frobenius_generates_test(sp)});
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ScanReport rep;
    rep.d = d;
    rep.max_p = max_p;
    rep.threads = threads;
#ifdef CMUNITS_VERSION
    rep.version = CMUNITS_VERSION;
#else
    rep.version = "0.0.0";
#endif
    rep.pi_convention =
        "lexicographically smallest (a, b) with a > 0 over unit multiples of both primes above p";
    for (auto& part : partial)
        for (auto& r : part) rep.records.push_back(std::move(r));
    for (const auto& r : rep.records)
        if (!r.purely_local_pi_bar || !r.purely_local_pi) rep.counter_examples.push_back(r.p);
    rep.timing_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return rep;
}

}  // namespace cmunits
