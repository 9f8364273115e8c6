#include <benchmark/benchmark.h>

#include <oversparse/coherence.hpp>
#include <oversparse/fixtures.hpp>
#include <oversparse/recon.hpp>
#include <oversparse/sensing.hpp>
#include <oversparse/transforms.hpp>

namespace os = oversparse;

namespace {

os::TransformKind kind_of(const benchmark::State& state) {
    return os::kAllKinds[static_cast<std::size_t>(state.range(0))];
}

void BM_Forward(benchmark::State& state) {
    const auto kind = kind_of(state);
    const auto n = static_cast<std::size_t>(state.range(1));
    const auto img = os::make_fixture("texture", n);
    for (auto _ : state) benchmark::DoNotOptimize(os::forward(img.pixels, kind, 3));
    state.SetLabel(std::string(os::to_string(kind)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

void BM_Inverse(benchmark::State& state) {
    const auto kind = kind_of(state);
    const auto n = static_cast<std::size_t>(state.range(1));
    const auto coeffs = os::forward(os::make_fixture("texture", n).pixels, kind, 3);
    for (auto _ : state) benchmark::DoNotOptimize(os::inverse(coeffs));
    state.SetLabel(std::string(os::to_string(kind)));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

void BM_PocsFrequency(benchmark::State& state) {
    const auto kind = kind_of(state);
    const auto img = os::make_fixture("texture", 256);
    const auto mask = os::make_mask(256, 256, 0.5, os::Domain::Frequency, os::MaskScheme::Uniform, 1);
    const auto y = os::sense_frequency(img, mask, 0.0, 2);
    os::ReconParams p;
    p.kind = kind;
    p.max_iter = 10;
    p.epsilon = 1e-12;
    for (auto _ : state) benchmark::DoNotOptimize(os::pocs_reconstruct(y, p));
    state.SetLabel(std::string(os::to_string(kind)) + ", 10 iterations");
}

void BM_CoherenceMc(benchmark::State& state) {
    const auto kind = kind_of(state);
    const auto mask = os::make_mask(256, 256, 0.5, os::Domain::Frequency, os::MaskScheme::Uniform, 1);
    os::CoherenceOptions opt;
    for (auto _ : state) benchmark::DoNotOptimize(os::estimate_coherence_mc(kind, 256, 256, mask, opt));
    state.SetLabel(std::string(os::to_string(kind)) + ", 200 trials");
}

}  // namespace

BENCHMARK(BM_Forward)->ArgsProduct({{0, 1, 2, 3, 4}, {128, 512}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Inverse)->ArgsProduct({{0, 1, 2, 3, 4}, {128, 512}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PocsFrequency)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoherenceMc)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
