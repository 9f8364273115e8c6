#include "oversparse/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace oversparse {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan is. Plans are
// created once per (shape, direction) with FFTW_UNALIGNED so they apply to any
// buffer through the new-array execute interface.
std::mutex plan_mutex;

fftw_plan get_plan(std::size_t width, std::size_t height, int sign) {
    static std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans;
    std::lock_guard lock(plan_mutex);
    const auto key = std::make_tuple(width, height, sign);
    if (auto it = plans.find(key); it != plans.end()) return it->second;
    std::vector<fftw_complex> scratch(width * height);
    fftw_plan p = fftw_plan_dft_2d(static_cast<int>(height), static_cast<int>(width), scratch.data(), scratch.data(),
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.emplace(key, p);
    return p;
}

ComplexGrid transform(const ComplexGrid& in, int sign, double scale) {
    ComplexGrid out(in.width(), in.height());
    if (in.empty()) return out;
    fftw_plan p = get_plan(in.width(), in.height(), sign);
    // std::complex<double> is layout-compatible with fftw_complex.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
    if (scale != 1.0)
        for (auto& v : out.values()) v *= scale;
    return out;
}

double unitary_scale(const ComplexGrid& g) { return 1.0 / std::sqrt(static_cast<double>(g.size())); }

}  // namespace

ComplexGrid fft2(const ComplexGrid& x) { return transform(x, FFTW_FORWARD, unitary_scale(x)); }
ComplexGrid fft2(const RealGrid& x) { return fft2(to_complex(x)); }
ComplexGrid ifft2(const ComplexGrid& X) { return transform(X, FFTW_BACKWARD, unitary_scale(X)); }
ComplexGrid dft2_unnormalized(const ComplexGrid& x) { return transform(x, FFTW_FORWARD, 1.0); }

RealGrid real_part(const ComplexGrid& x) {
    RealGrid out(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].real();
    return out;
}

RealGrid imag_part(const ComplexGrid& x) {
    RealGrid out(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].imag();
    return out;
}

ComplexGrid to_complex(const RealGrid& x) {
    ComplexGrid out(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
    return out;
}

}  // namespace oversparse
