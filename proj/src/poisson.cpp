/// Spectral-side pipeline: critical-line sampling of the rank-one scattering
/// coefficient, windowed FFT to the time side, peak detection at the sojourn
/// times, and the lift to the rank-two singular-support patterns.

#include "scatterflat/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <fftw3.h>

namespace scatterflat::poisson {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int thread_count() {
    const char* env = std::getenv("SCATTERFLAT_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) return 1;
    return static_cast<int>(std::min<long>(v, 64));
}

/// Window weight at sample index k of n, at abscissa r.
double window_weight(const WindowSpec& w, std::size_t k, std::size_t n, double r) {
    switch (w.kind) {
        case WindowKind::gaussian:
            return std::exp(-r * r / (2.0 * w.sigma * w.sigma));
        case WindowKind::hann:
            return 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(k) /
                                         static_cast<double>(n - 1)));
        case WindowKind::none:
            return 1.0;
    }
    return 1.0;
}

const std::array<int, 3> kPatternOneTwo = {1, 1, 0};
const std::array<int, 3> kPatternTwoThree = {0, 1, 1};

/// (12) -> (T, T, 0); (23) -> (0, T, T); anything else rejected.
std::array<int, 3> pattern_for(const Permutation& w) {
    if (w.n() == 3 && w == Permutation::transposition(3, 1, 2)) return kPatternOneTwo;
    if (w.n() == 3 && w == Permutation::transposition(3, 2, 3)) return kPatternTwoThree;
    throw PreconditionError("unsupported_weyl",
                            "the one-variable reduction applies to the simple "
                            "transpositions (12) and (23) only");
}

} // namespace

SpectralSamples sample_phi(double r_max, std::size_t count, const WindowSpec& window,
                           const EvalOptions& opts) {
    if (!(r_max > 0.0) || r_max > 2000.0)
        throw PreconditionError("bad_range", "sampling requires 0 < r_max <= 2000");
    if (!is_pow2(count) || count < 1024 || count > (std::size_t{1} << 20))
        throw PreconditionError("bad_count",
                                "sample count must be a power of two in [1024, 2^20]");

    const double delta = 2.0 * r_max / static_cast<double>(count);
    SpectralSamples out;
    out.count = count;
    out.r_min = -r_max + 0.5 * delta;
    out.r_max = r_max - 0.5 * delta;
    out.values.assign(count, Cplx(0.0, 0.0));
    out.window = window;
    if (out.window.kind == WindowKind::gaussian && out.window.sigma == 0.0)
        out.window.sigma = r_max / 4.0;

    // The grid is symmetric (r at index count-1-k is -r at index k) and misses
    // r = 0 by half a bin; only the positive half is evaluated, the negative
    // half follows from Phi(-r) = conj(Phi(r)).
    const std::size_t half = count / 2;
    std::vector<double> excluded;

    const int n_threads = thread_count();
    std::vector<std::vector<double>> thread_excluded(static_cast<size_t>(n_threads));
    std::vector<double> thread_dev(static_cast<size_t>(n_threads), 0.0);

    auto worker = [&](int t) {
        for (std::size_t k = half + static_cast<std::size_t>(t); k < count;
             k += static_cast<std::size_t>(n_threads)) {
            const double r = out.r_min + static_cast<double>(k) * delta;
            Cplx v(0.0, 0.0);
            try {
                v = scatmat::c_rank1(Cplx(0.5, r), opts).value;
                const double dev = std::abs(std::abs(v) - 1.0);
                if (dev > thread_dev[static_cast<size_t>(t)])
                    thread_dev[static_cast<size_t>(t)] = dev;
            } catch (const PoleError&) {
                thread_excluded[static_cast<size_t>(t)].push_back(r);
                thread_excluded[static_cast<size_t>(t)].push_back(-r);
            }
            out.values[k] = v;
            out.values[count - 1 - k] = std::conj(v);
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    for (int t = 0; t < n_threads; ++t) {
        out.unitarity_deviation =
            std::max(out.unitarity_deviation, thread_dev[static_cast<size_t>(t)]);
        excluded.insert(excluded.end(), thread_excluded[static_cast<size_t>(t)].begin(),
                        thread_excluded[static_cast<size_t>(t)].end());
    }
    std::sort(excluded.begin(), excluded.end());
    out.excluded_points = std::move(excluded);
    return out;
}

SpectralSamples windowed_fft(const SpectralSamples& in) {
    const std::size_t n = in.count;
    if (!is_pow2(n) || in.values.size() != n)
        throw PreconditionError("bad_count", "transform input must hold 2^m samples");
    if (n < 2)
        throw PreconditionError("bad_count", "transform needs at least 2 samples");

    const double delta = in.spacing();
    WindowSpec wspec = in.window;
    if (wspec.kind == WindowKind::gaussian && wspec.sigma == 0.0)
        wspec.sigma = (in.r_max + 0.5 * delta) / 4.0; // requested half-span / 4

    fftw_complex* buf_in = fftw_alloc_complex(n);
    fftw_complex* buf_out = fftw_alloc_complex(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf_in, buf_out, FFTW_BACKWARD,
                                      FFTW_ESTIMATE);

    // X(zeta_j) = delta * e^{i zeta_j r_0} * sum_k [(-1)^k w_k x_k] e^{2 pi i jk/n}
    // with zeta_j = (j - n/2) * 2 pi / (n delta).
    for (std::size_t k = 0; k < n; ++k) {
        const double r = in.r_min + static_cast<double>(k) * delta;
        const double w = window_weight(wspec, k, n, r);
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const Cplx y = sign * w * in.values[k];
        buf_in[k][0] = y.real();
        buf_in[k][1] = y.imag();
    }
    fftw_execute(plan);

    SpectralSamples out;
    out.count = n;
    const double zeta_step = 2.0 * kPi / (static_cast<double>(n) * delta);
    out.r_min = -0.5 * static_cast<double>(n) * zeta_step;
    out.r_max = out.r_min + static_cast<double>(n - 1) * zeta_step;
    out.window = wspec;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double zeta = out.r_min + static_cast<double>(j) * zeta_step;
        const Cplx phase = std::exp(Cplx(0.0, zeta * in.r_min));
        out.values[j] = delta * phase * Cplx(buf_out[j][0], buf_out[j][1]);
    }

    fftw_destroy_plan(plan);
    fftw_free(buf_in);
    fftw_free(buf_out);
    return out;
}

PeakReport detect_peaks(const SpectralSamples& spectrum, double threshold_ratio,
                        double min_zeta) {
    if (spectrum.count < 4 || spectrum.values.size() != spectrum.count)
        throw PreconditionError("bad_count", "peak detection needs at least 4 samples");
    if (threshold_ratio <= 0.0)
        throw PreconditionError("bad_threshold", "threshold ratio must be positive");

    const std::size_t n = spectrum.count;
    std::vector<double> mag(n);
    for (std::size_t j = 0; j < n; ++j) mag[j] = std::abs(spectrum.values[j]);

    std::vector<double> sorted = mag;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(n / 2), sorted.end());
    const double median = sorted[n / 2]; // upper of the two central order statistics

    PeakReport report;
    report.threshold = threshold_ratio * median;
    report.resolution = spectrum.spacing();

    const double step = spectrum.spacing();
    for (std::size_t j = 2; j + 2 < n; ++j) {
        const double zeta = spectrum.r_min + static_cast<double>(j) * step;
        if (zeta <= min_zeta) continue;
        if (!(mag[j] > report.threshold)) continue;
        // A maximum must dominate two bins on each side. For conjugate-
        // symmetric input the transform is real with per-bin sign alternation
        // in the ripple floor; where that alternation meets a peak tail, a
        // single-bin cancellation fakes a one-bin "maximum" on the modulus.
        // Comparing across two bins rejects those artifacts while keeping any
        // genuine peak, whose width is at least the window's bandwidth.
        if (!(mag[j] > mag[j - 1] && mag[j] > mag[j + 1] && mag[j] > mag[j - 2] &&
              mag[j] > mag[j + 2]))
            continue;
        // A resolved peak keeps a slowly varying phase across its main lobe.
        // Bin-to-bin phase reversal on both sides (consecutive values in
        // opposing half-planes) is Nyquist-rate leakage from the window's
        // nonzero boundary value: its phase advances by ~pi per bin because
        // the bin spacing times r_max equals pi. The broad modulus crests of
        // that alternating floor are not resolved features; reject them.
        const auto& v = spectrum.values;
        const bool flips_left = (v[j] * std::conj(v[j - 1])).real() < 0.0;
        const bool flips_right = (v[j + 1] * std::conj(v[j])).real() < 0.0;
        if (flips_left && flips_right) continue;

        const double lo = mag[j - 1], mid = mag[j], hi = mag[j + 1];
        const double denom = lo - 2.0 * mid + hi;
        double shift = 0.0;
        if (std::abs(denom) > 1e-300) shift = 0.5 * (lo - hi) / denom;
        shift = std::clamp(shift, -0.5, 0.5);

        Peak p;
        p.location = zeta + shift * step;
        p.magnitude = mid - 0.25 * (lo - hi) * shift;
        report.peaks.push_back(p);
    }
    return report;
}

PeakReport stable_peaks(double r_max, std::size_t count, const WindowSpec& window,
                        double threshold_ratio, double min_zeta, const EvalOptions& opts) {
    if (window.kind == WindowKind::none)
        throw PreconditionError("bad_window",
                                "stability cross-checks need a tapered window "
                                "(gaussian or hann)");
    if (!(r_max > 0.0) || r_max > 1000.0)
        throw PreconditionError("bad_range",
                                "stable_peaks requires 0 < r_max <= 1000 (the doubled "
                                "run must stay within the sampling range)");
    if (!is_pow2(count) || count < 1024 || count > (std::size_t{1} << 19))
        throw PreconditionError("bad_count",
                                "stable_peaks needs a power-of-two count in [1024, 2^19]");

    SpectralSamples base = sample_phi(r_max, count, window, opts);
    const PeakReport rep_base = detect_peaks(windowed_fft(base), threshold_ratio, min_zeta);

    // Window swap: re-window the identical samples with the other taper.
    SpectralSamples swapped = base;
    swapped.window.kind =
        window.kind == WindowKind::gaussian ? WindowKind::hann : WindowKind::gaussian;
    swapped.window.sigma = 0.0; // let the transform resolve the default width
    const PeakReport rep_swap = detect_peaks(windowed_fft(swapped), threshold_ratio, min_zeta);

    // Resolution doubling: double the span and the count, halving the bin.
    const PeakReport rep_dbl = detect_peaks(
        windowed_fft(sample_phi(2.0 * r_max, 2 * count, window, opts)), threshold_ratio,
        min_zeta);

    const double tol = rep_base.resolution; // one base bin
    const auto recurs_in = [tol](double loc, const PeakReport& other) {
        for (const Peak& q : other.peaks)
            if (std::abs(q.location - loc) <= tol) return true;
        return false;
    };

    PeakReport out;
    out.threshold = rep_base.threshold;
    out.resolution = rep_base.resolution;
    for (const Peak& p : rep_base.peaks)
        if (recurs_in(p.location, rep_swap) && recurs_in(p.location, rep_dbl))
            out.peaks.push_back(p);
    return out;
}

Sl3Reduction sl3_reduce(const Permutation& w, const std::array<double, 3>& eta,
                        const EvalOptions& opts) {
    const std::array<int, 3> pat = pattern_for(w); // also validates w
    (void)pat;

    const double mean = (eta[0] + eta[1] + eta[2]) / 3.0;
    const std::array<double, 3> e = {eta[0] - mean, eta[1] - mean, eta[2] - mean};

    const auto inv = w.inversions();
    const int a = inv.front().first, b = inv.front().second;
    Sl3Reduction out;
    out.r = 0.5 * (e[static_cast<size_t>(a - 1)] - e[static_cast<size_t>(b - 1)]);
    out.value = scatmat::c_rank1(Cplx(0.5, out.r), opts).value;

    const scatmat::SpectralParameter3 lambda = scatmat::SpectralParameter3::from_components(
        Cplx(0.0, e[0]), Cplx(0.0, e[1]), Cplx(0.0, e[2]));
    const Cplx direct = scatmat::c_rank2(w, lambda, opts).value;
    out.check_residual = std::abs(direct - out.value);
    if (!(out.check_residual <= 1e-10))
        throw Error("reduction_mismatch",
                    "one-variable reduction disagrees with the direct rank-two value");
    return out;
}

namespace {

Sl3SingularSupport lift_to_pattern(const std::array<int, 3>& pat, PeakReport report) {
    Sl3SingularSupport out;
    out.report = std::move(report);
    out.vectors.reserve(out.report.peaks.size());
    for (const Peak& p : out.report.peaks) {
        std::array<double, 3> v{};
        for (int i = 0; i < 3; ++i)
            v[static_cast<size_t>(i)] = pat[static_cast<size_t>(i)] * p.location;
        out.vectors.push_back(v);
    }
    return out;
}

} // namespace

Sl3SingularSupport sl3_singular_support_from(const Permutation& w,
                                             const SpectralSamples& phi_samples) {
    const std::array<int, 3> pat = pattern_for(w);
    return lift_to_pattern(pat, detect_peaks(windowed_fft(phi_samples)));
}

Sl3SingularSupport sl3_singular_support(const Permutation& w, double r_max,
                                        std::size_t count, const WindowSpec& window,
                                        const EvalOptions& opts) {
    const std::array<int, 3> pat = pattern_for(w); // validate before sampling
    return lift_to_pattern(pat, stable_peaks(r_max, count, window, 5.0, 0.25, opts));
}

} // namespace scatterflat::poisson
