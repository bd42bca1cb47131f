#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace prft::detail {
namespace {

// FFTW planning is not thread-safe, execution with the new-array interface
// is. Plans are made once per (length, direction) with FFTW_ESTIMATE, which
// makes the choice of algorithm independent of timing, and FFTW_UNALIGNED so
// a plan may run on any buffer.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, FftDirection dir) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_pair(n, dir);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<std::complex<double>> a(n), b(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                                          reinterpret_cast<fftw_complex*>(b.data()),
                                          dir == FftDirection::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, FftDirection>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

} // namespace

void fft(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, FftDirection dir) {
    const std::size_t n = in.size();
    if (n == 0) return;
    if (n == 1) {
        out[0] = in[0];
        return;
    }
    fftw_plan plan = cache().get(n, dir);
    // FFTW never writes to the input of an out-of-place complex transform
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace prft::detail
