#pragma once

/**
 * @file spectral.hpp
 * @brief Unitary DFT/IDFT shared by every stage of the pipeline.
 *
 * Both directions carry a 1/sqrt(N) factor, so the transform pair is
 * energy preserving and the forward/inverse matched filter factors balance.
 * FFTW is used underneath (any N); its unnormalized output is rescaled here.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <fftw3.h>

namespace irci {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;

namespace detail {

enum class Direction { Forward, Inverse };

// Plans are created once per (N, direction) and executed through the
// new-array interface, which is thread-safe. Planning itself is not, hence the lock.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t n, Direction dir) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, dir);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        std::vector<fftw_complex> scratch_in(n), scratch_out(n);
        const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch_in.data(), scratch_out.data(),
                                          sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw std::runtime_error("fftw: failed to create plan");
        plans_.emplace(key, plan);
        return plan;
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    PlanCache() = default;

    std::mutex mutex_;
    std::map<std::pair<std::size_t, Direction>, fftw_plan> plans_;
};

inline void require_valid(std::span<const Complex> x, const char* who) {
    if (x.empty()) throw std::invalid_argument(std::string(who) + ": empty input");
    for (const auto& v : x) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument(std::string(who) + ": non-finite sample");
    }
}

inline ComplexVector transform(std::span<const Complex> x, Direction dir) {
    const std::size_t n = x.size();
    ComplexVector in(x.begin(), x.end());
    ComplexVector out(n);
    fftw_plan plan = PlanCache::instance().get(n, dir);
    // std::complex<double> is layout-compatible with fftw_complex.
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace detail

/// X(k) = 1/sqrt(N) * sum_n x(n) exp(-j 2 pi n k / N)
inline ComplexVector unitary_dft(std::span<const Complex> x) {
    detail::require_valid(x, "unitary_dft");
    return detail::transform(x, detail::Direction::Forward);
}

/// x(n) = 1/sqrt(N) * sum_k X(k) exp(+j 2 pi n k / N)
inline ComplexVector unitary_idft(std::span<const Complex> x) {
    detail::require_valid(x, "unitary_idft");
    return detail::transform(x, detail::Direction::Inverse);
}

/// y(n) = x(<n - shift>_N). A positive shift delays the sequence.
template <typename T>
std::vector<T> circular_shift(std::span<const T> x, std::ptrdiff_t shift) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    std::vector<T> y(x.size());
    if (n == 0) return y;
    const std::ptrdiff_t s = ((shift % n) + n) % n;
    std::rotate_copy(x.begin(), x.begin() + (n - s), x.end(), y.begin());
    return y;
}

template <typename T>
std::vector<T> circular_shift(const std::vector<T>& x, std::ptrdiff_t shift) {
    return circular_shift(std::span<const T>(x), shift);
}

inline double energy(std::span<const Complex> x) {
    double e = 0.0;
    for (const auto& v : x) e += std::norm(v);
    return e;
}

}  // namespace irci
