#include "sdflow/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace sdflow::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex planner_mutex;
std::map<std::pair<int, int>, PlanPair>& registry() {
    static std::map<std::pair<int, int>, PlanPair> plans;
    return plans;
}

PlanPair plans_for(int nx, int nt) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    auto& reg = registry();
    auto it = reg.find({nx, nt});
    if (it != reg.end()) return it->second;

    fftw_complex* a = fftw_alloc_complex(static_cast<size_t>(nx) * nt);
    fftw_complex* b = fftw_alloc_complex(static_cast<size_t>(nx) * nt);
    PlanPair p;
    p.fwd = fftw_plan_dft_2d(nx, nt, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_2d(nx, nt, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    fftw_free(a);
    fftw_free(b);
    reg[{nx, nt}] = p;
    return p;
}

struct Buffer {
    fftw_complex* p;
    explicit Buffer(size_t n) : p(fftw_alloc_complex(n)) {}
    ~Buffer() { fftw_free(p); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
};

}  // namespace

void forward(int nx, int nt, const std::complex<double>* in, std::complex<double>* out) {
    const size_t n = static_cast<size_t>(nx) * nt;
    PlanPair p = plans_for(nx, nt);
    Buffer bi(n), bo(n);
    std::memcpy(bi.p, in, n * sizeof(fftw_complex));
    fftw_execute_dft(p.fwd, bi.p, bo.p);
    const double scale = 1.0 / static_cast<double>(n);
    for (size_t k = 0; k < n; ++k)
        out[k] = std::complex<double>(bo.p[k][0] * scale, bo.p[k][1] * scale);
}

void inverse(int nx, int nt, const std::complex<double>* in, std::complex<double>* out) {
    const size_t n = static_cast<size_t>(nx) * nt;
    PlanPair p = plans_for(nx, nt);
    Buffer bi(n), bo(n);
    std::memcpy(bi.p, in, n * sizeof(fftw_complex));
    fftw_execute_dft(p.bwd, bi.p, bo.p);
    for (size_t k = 0; k < n; ++k) out[k] = std::complex<double>(bo.p[k][0], bo.p[k][1]);
}

}  // namespace sdflow::fft
