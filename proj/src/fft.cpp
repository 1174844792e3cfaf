#include "lognls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace lognls {

struct Fft::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    Plans() = default;
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
    ~Plans();
};

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

using ShapeKey = std::pair<int, std::array<int, kMaxDim>>;

} // namespace

Fft::Plans::~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
}

Fft::Fft(const GridSpec& grid) : size_(grid.size()) {
    // Plans live for the process; the cache stays small (one entry per shape).
    static auto* cache = new std::map<ShapeKey, std::shared_ptr<const Plans>>();

    ShapeKey key{grid.dim(), {grid.points(0), grid.dim() > 1 ? grid.points(1) : 1}};
    std::lock_guard lock(planner_mutex());
    if (auto it = cache->find(key); it != cache->end()) {
        plans_ = it->second;
        return;
    }

    std::vector<Complex> scratch(size_);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    auto plans = std::make_shared<Plans>();
    if (grid.dim() == 1) {
        plans->forward = fftw_plan_dft_1d(grid.points(0), buf, buf, FFTW_FORWARD, flags);
        plans->backward = fftw_plan_dft_1d(grid.points(0), buf, buf, FFTW_BACKWARD, flags);
    } else {
        plans->forward = fftw_plan_dft_2d(grid.points(0), grid.points(1), buf, buf, FFTW_FORWARD, flags);
        plans->backward = fftw_plan_dft_2d(grid.points(0), grid.points(1), buf, buf, FFTW_BACKWARD, flags);
    }
    if (!plans->forward || !plans->backward) {
        throw std::runtime_error("FFTW planning failed");
    }
    plans_ = plans;
    cache->emplace(key, std::move(plans));
}

void Fft::forward(std::span<Complex> data) const {
    if (data.size() != size_) throw std::invalid_argument("Fft::forward: size mismatch");
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans_->forward, p, p);
}

void Fft::inverse(std::span<Complex> data) const {
    if (data.size() != size_) throw std::invalid_argument("Fft::inverse: size mismatch");
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plans_->backward, p, p);
    const double scale = 1.0 / static_cast<double>(size_);
    for (auto& z : data) z *= scale;
}

} // namespace lognls
