#pragma once

#include <complex>
#include <memory>
#include <span>

#include "lognls/grid.hpp"

namespace lognls {

/**
 * Unnormalized forward / backward complex DFT over the full tensor grid.
 *
 * Plans are shared per grid shape and built with FFTW_ESTIMATE, so the
 * transform algorithm (and therefore every rounding) is the same on every
 * run. Executing a plan is thread-safe; planning is serialized internally.
 */
class Fft {
public:
    explicit Fft(const GridSpec& grid);

    void forward(std::span<Complex> data) const;
    /// Backward transform including the 1/size normalization.
    void inverse(std::span<Complex> data) const;

    std::size_t size() const { return size_; }

private:
    struct Plans;
    std::shared_ptr<const Plans> plans_;
    std::size_t size_;
};

} // namespace lognls
