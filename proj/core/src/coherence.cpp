#include "oversparse/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "oversparse/error.hpp"
#include "oversparse/fft.hpp"
#include "oversparse/rng.hpp"

namespace oversparse {

namespace {

Eigen::MatrixXcd normalized_columns(const Eigen::MatrixXcd& m, const char* name) {
    Eigen::MatrixXcd out = m;
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
        const double n = out.col(j).norm();
        if (n == 0.0) throw ArgumentError(std::string(name) + " has a zero column");
        out.col(j) /= n;
    }
    return out;
}

}  // namespace

double mutual_coherence_exact(const Eigen::MatrixXcd& phi, const Eigen::MatrixXcd& psi) {
    const Eigen::Index n = phi.rows();
    if (phi.cols() != n) throw DimensionError("phi must be square");
    if (psi.rows() != n) throw DimensionError("phi and psi have different row counts");
    if (n == 0 || psi.cols() == 0) throw DimensionError("empty basis");
    if (n > kExactCoherenceMaxN)
        throw ArgumentError("explicit coherence is limited to N <= " + std::to_string(kExactCoherenceMaxN));
    const Eigen::MatrixXcd g = normalized_columns(phi, "phi").adjoint() * normalized_columns(psi, "psi");
    return std::sqrt(static_cast<double>(n)) * g.cwiseAbs().maxCoeff();
}

namespace {

// One family of atoms: every shift of a base atom on the subband grid.
struct AtomFamily {
    SubbandSelector selector;
    std::size_t rows = 0, cols = 0;  // subband size (number of positions)
    std::size_t stride = 0;          // pixel shift per subband step
    ComplexGrid spectrum;            // unitary DFT of the base atom
    double norm = 0.0;               // masked norm, identical for every shift
};

// Unnormalised DFT of mask * conj(a) * b, sampled on the grid of multiples of
// `stride`: its value at shift d is <R F atom_a, R F shift_d(atom_b)>.
// Sampling a DFT every `stride` bins equals the small DFT of the input folded
// modulo the reduced size.
ComplexGrid cross_map(const AtomFamily& a, const AtomFamily& b, const SamplingMask& mask, std::size_t stride) {
    const std::size_t W = mask.width(), H = mask.height();
    const std::size_t w = W / stride, h = H / stride;
    ComplexGrid folded(w, h);
    for (std::size_t r = 0; r < H; ++r)
        for (std::size_t c = 0; c < W; ++c)
            if (mask.kept(r, c)) folded(r % h, c % w) += std::conj(a.spectrum(r, c)) * b.spectrum(r, c);
    return dft2_unnormalized(folded);
}

}  // namespace

CoherenceEstimate estimate_coherence_mc(TransformKind kind, std::size_t width, std::size_t height,
                                        const SamplingMask& mask, const CoherenceOptions& options) {
    if (mask.domain != Domain::Frequency) throw ArgumentError("coherence needs a frequency-domain mask");
    if (mask.width() != width || mask.height() != height) throw DimensionError("mask and image shapes differ");
    validate_shape(width, height, options.levels);
    if (options.trials < 2) throw ArgumentError("at least 2 trials are required");
    if (options.batch == 1 || options.batch < 0) throw ArgumentError("batch must be at least 2 (or 0 for all atoms)");
    if (!options.all_subbands && (options.level < 1 || options.level > options.levels))
        throw ArgumentError("atom level outside 1.." + std::to_string(options.levels));

    std::vector<SubbandSelector> sels;
    if (options.all_subbands) {
        for (int j = 1; j <= options.levels; ++j) {
            auto s = all_selectors(kind, j);
            sels.insert(sels.end(), s.begin(), s.end());
        }
    } else {
        sels = diagonal_selectors(kind, options.level);
    }

    std::vector<AtomFamily> fam;
    for (const auto& sel : sels) {
        AtomFamily f;
        f.selector = sel;
        f.rows = height >> sel.level;
        f.cols = width >> sel.level;
        f.stride = std::size_t{1} << sel.level;
        const RealGrid base = delta_response(kind, options.levels, sel, 0, 0, width, height);
        f.spectrum = fft2(base);
        double masked = 0.0;
        for (std::size_t i = 0; i < f.spectrum.size(); ++i)
            if (mask.kept[i]) masked += std::norm(f.spectrum[i]);
        // Relative cut-off: anything this small is rounding noise of an atom
        // whose spectrum lies entirely outside the mask.
        f.norm = masked > 1e-24 * squared_norm(base) ? std::sqrt(masked) : 0.0;
        fam.push_back(std::move(f));
    }

    const std::size_t F = fam.size();
    std::vector<ComplexGrid> maps(F * F);
    std::vector<std::size_t> map_stride(F * F, 0);
    for (std::size_t a = 0; a < F; ++a)
        for (std::size_t b = a; b < F; ++b) {
            if (fam[a].norm == 0.0 || fam[b].norm == 0.0) continue;
            const std::size_t s = std::min(fam[a].stride, fam[b].stride);
            maps[a * F + b] = cross_map(fam[a], fam[b], mask, s);
            map_stride[a * F + b] = s;
        }

    // |Gram| between atom (a at subband position pa) and (b at pb), both unit normalised.
    auto gram = [&](std::size_t a, std::size_t pa, std::size_t b, std::size_t pb) {
        if (a > b) {
            std::swap(a, b);
            std::swap(pa, pb);
        }
        const std::size_t s = map_stride[a * F + b];
        const ComplexGrid& q = maps[a * F + b];
        const std::size_t ra = (pa / fam[a].cols) * fam[a].stride, ca = (pa % fam[a].cols) * fam[a].stride;
        const std::size_t rb = (pb / fam[b].cols) * fam[b].stride, cb = (pb % fam[b].cols) * fam[b].stride;
        const std::size_t dr = ((rb + height - ra) % height) / s, dc = ((cb + width - ca) % width) / s;
        return std::abs(q(dr, dc)) / (fam[a].norm * fam[b].norm);
    };

    std::vector<std::size_t> offsets(F + 1, 0);
    for (std::size_t f = 0; f < F; ++f) offsets[f + 1] = offsets[f] + fam[f].rows * fam[f].cols;
    const std::size_t total = offsets[F];

    CoherenceEstimate est;
    est.kind = kind;
    est.ratio = mask.ratio;
    est.trials = options.trials;
    est.seed = options.seed;

    const bool exhaustive = options.batch == 0 || static_cast<std::size_t>(options.batch) >= total;
    if (exhaustive) {
        est.batch = static_cast<int>(total);
        double worst = 0.0;
        std::size_t usable = 0;
        for (std::size_t a = 0; a < F; ++a) {
            if (fam[a].norm == 0.0) {
                est.rejected += static_cast<int>(fam[a].rows * fam[a].cols);
                continue;
            }
            usable += fam[a].rows * fam[a].cols;
            for (std::size_t b = a; b < F; ++b) {
                if (fam[b].norm == 0.0) continue;
                const ComplexGrid& q = maps[a * F + b];
                const double scale = fam[a].norm * fam[b].norm;
                for (std::size_t i = 0; i < q.size(); ++i) {
                    if (a == b && i == 0) continue;  // an atom against itself
                    worst = std::max(worst, std::abs(q[i]) / scale);
                }
            }
        }
        if (usable < 2) throw NumericalError("fewer than two atoms survive the mask");
        est.v.assign(static_cast<std::size_t>(options.trials), worst);
        est.mu_tilde = worst;
        return est;
    }

    est.batch = options.batch;
    const std::size_t batch = static_cast<std::size_t>(options.batch);
    for (int t = 0; t < options.trials; ++t) {
        Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(t)));
        std::set<std::size_t> chosen;
        std::vector<std::pair<std::size_t, std::size_t>> atoms;  // (family, position)
        int redraws = 0;
        while (atoms.size() < batch) {
            const std::size_t idx = static_cast<std::size_t>(rng.below(total));
            if (chosen.count(idx)) continue;
            const std::size_t f = static_cast<std::size_t>(
                std::upper_bound(offsets.begin(), offsets.end(), idx) - offsets.begin() - 1);
            if (fam[f].norm == 0.0) {
                ++est.rejected;
                if (++redraws > 10 * options.batch)
                    throw NumericalError("too many atoms vanish under the mask (" + std::to_string(redraws) +
                                         " redraws in one trial)");
                continue;
            }
            chosen.insert(idx);
            atoms.emplace_back(f, idx - offsets[f]);
        }
        double vi = 0.0;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            for (std::size_t j = i + 1; j < atoms.size(); ++j)
                vi = std::max(vi, gram(atoms[i].first, atoms[i].second, atoms[j].first, atoms[j].second));
        est.v.push_back(vi);
    }
    est.mu_tilde = *std::max_element(est.v.begin(), est.v.end());
    return est;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t f = n - k + i;
        if (r > UINT64_MAX / f) return UINT64_MAX;
        r = r * f / i;  // exact: r * f is a multiple of i
    }
    return r;
}

namespace {

double subset_delta(const Eigen::MatrixXd& a, const std::vector<Eigen::Index>& cols) {
    const Eigen::Index s = static_cast<Eigen::Index>(cols.size());
    Eigen::MatrixXd sub(a.rows(), s);
    for (Eigen::Index j = 0; j < s; ++j) {
        sub.col(j) = a.col(cols[static_cast<std::size_t>(j)]);
        const double n = sub.col(j).norm();
        if (n > 0.0) sub.col(j) /= n;
    }
    const Eigen::MatrixXd g = sub.transpose() * sub;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max({0.0, 1.0 - ev.minCoeff(), ev.maxCoeff() - 1.0});
}

}  // namespace

RipEstimate estimate_rip(const Eigen::MatrixXd& a, int sparsity, RipMethod method, std::uint64_t trials,
                         std::uint64_t seed) {
    if (sparsity < 1) throw ArgumentError("sparsity must be at least 1");
    if (sparsity > a.rows()) throw ArgumentError("sparsity exceeds the number of rows");
    if (sparsity > a.cols()) throw ArgumentError("sparsity exceeds the number of columns");
    const std::uint64_t n = static_cast<std::uint64_t>(a.cols());
    const std::size_t s = static_cast<std::size_t>(sparsity);

    RipEstimate est;
    est.sparsity = sparsity;
    est.method = method;
    std::vector<Eigen::Index> cols(s);

    if (method == RipMethod::Exhaustive) {
        const std::uint64_t count = binomial(n, s);
        if (count > kRipExhaustiveLimit)
            throw ArgumentError("exhaustive RIP would examine " + std::to_string(count) + " subsets (limit " +
                                std::to_string(kRipExhaustiveLimit) + ")");
        std::iota(cols.begin(), cols.end(), Eigen::Index{0});
        while (true) {
            est.delta = std::max(est.delta, subset_delta(a, cols));
            ++est.trials;
            // Next combination in lexicographic order.
            std::size_t i = s;
            while (i > 0 && cols[i - 1] == static_cast<Eigen::Index>(n - s + i - 1)) --i;
            if (i == 0) break;
            ++cols[i - 1];
            for (std::size_t j = i; j < s; ++j) cols[j] = cols[j - 1] + 1;
        }
        return est;
    }

    if (trials == 0) throw ArgumentError("randomized RIP needs at least one trial");
    Rng rng(seed);
    std::vector<Eigen::Index> perm(n);
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::iota(perm.begin(), perm.end(), Eigen::Index{0});
        for (std::size_t i = 0; i < s; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
            std::swap(perm[i], perm[j]);
        }
        std::copy(perm.begin(), perm.begin() + static_cast<long>(s), cols.begin());
        std::sort(cols.begin(), cols.end());
        est.delta = std::max(est.delta, subset_delta(a, cols));
    }
    est.trials = trials;
    return est;
}

}  // namespace oversparse
