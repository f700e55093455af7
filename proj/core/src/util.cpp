#include "beurling/util.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

namespace beurling {

namespace {
std::atomic<unsigned> g_max_threads{0};

unsigned effective_threads() {
    unsigned cap = g_max_threads.load();
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return cap == 0 ? hw : std::min(cap, hw);
}
}    // namespace

void set_max_threads(unsigned n) { g_max_threads.store(n); }
unsigned max_threads() { return effective_threads(); }

void parallel_chunks(std::size_t n, std::size_t grain,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    if (grain == 0) grain = 1;
    const std::size_t nchunks = (n + grain - 1) / grain;
    unsigned nthreads = std::min<std::size_t>(effective_threads(), nchunks);
    if (nthreads <= 1) {
        for (std::size_t k = 0; k < nchunks; ++k)
            body(k, k * grain, std::min(n, (k + 1) * grain));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t k = next.fetch_add(1);
            if (k >= nchunks) return;
            body(k, k * grain, std::min(n, (k + 1) * grain));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (unsigned i = 0; i + 1 < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

double parallel_sum(std::size_t n, std::size_t grain,
                    const std::function<double(std::size_t, std::size_t)>& chunk_sum) {
    if (n == 0) return 0.0;
    if (grain == 0) grain = 1;
    const std::size_t nchunks = (n + grain - 1) / grain;
    std::vector<double> partial(nchunks, 0.0);
    parallel_chunks(n, grain, [&](std::size_t k, std::size_t b, std::size_t e) {
        partial[k] = chunk_sum(b, e);
    });
    kahan_sum acc;
    for (double p : partial) acc.add(p);
    return acc.value();
}

cplx parallel_csum(std::size_t n, std::size_t grain,
                   const std::function<cplx(std::size_t, std::size_t)>& chunk_sum) {
    if (n == 0) return {};
    if (grain == 0) grain = 1;
    const std::size_t nchunks = (n + grain - 1) / grain;
    std::vector<cplx> partial(nchunks);
    parallel_chunks(n, grain, [&](std::size_t k, std::size_t b, std::size_t e) {
        partial[k] = chunk_sum(b, e);
    });
    kahan_csum acc;
    for (cplx p : partial) acc.add(p);
    return acc.value();
}

// splitmix64; passes BigCrush, trivially seedable.
std::uint64_t rng64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double rng64::uniform() { return double(next() >> 11) * 0x1.0p-53; }

double rng64::uniform(double a, double b) { return a + (b - a) * uniform(); }

cplx rng64::unit_disc() {
    for (;;) {
        double x = uniform(-1.0, 1.0), y = uniform(-1.0, 1.0);
        if (x * x + y * y <= 1.0) return {x, y};
    }
}

std::string fmt_double(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

std::string fmt_complex(cplx z) {
    std::string s = fmt_double(z.real());
    if (!std::signbit(z.imag())) s += '+';
    s += fmt_double(z.imag());
    s += 'i';
    return s;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    if (lo <= 0 || hi < lo) throw validation_error("logspace: need 0 < lo <= hi");
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(llo + (lhi - llo) * double(i) / double(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

}    // namespace beurling
