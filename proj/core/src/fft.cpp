#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace gdnls::detail {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plans are created once per size with FFTW_ESTIMATE so results are
// reproducible run to run, and executed through the new-array interface.
PlanPair& plans_for(std::size_t m) {
    static std::map<std::size_t, PlanPair> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(m);
    if (it == cache.end()) {
        std::vector<std::complex<double>> a(m), b(m);
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        PlanPair p;
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        p.fwd = fftw_plan_dft_1d(static_cast<int>(m), pa, pb, FFTW_FORWARD, flags);
        p.bwd = fftw_plan_dft_1d(static_cast<int>(m), pa, pb, FFTW_BACKWARD, flags);
        it = cache.emplace(m, p).first;
    }
    return it->second;
}

}  // namespace

void fft_forward(std::size_t m, const std::complex<double>* in, std::complex<double>* out) {
    auto& plans = plans_for(m);
    fftw_execute_dft(plans.fwd,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void fft_backward(std::size_t m, const std::complex<double>* in, std::complex<double>* out) {
    auto& plans = plans_for(m);
    fftw_execute_dft(plans.bwd,
                     reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace gdnls::detail
