#pragma once

/// Spectral-side pipeline: sample the rank-one coefficient along the critical
/// line, take a windowed discrete Fourier transform, detect peaks (which sit
/// at the sojourn times 2 ln c), and lift the result to the rank-two singular
/// support patterns on the three-dimensional frequency space.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "scatterflat/exactlin.hpp"
#include "scatterflat/scatmat.hpp"

namespace scatterflat::poisson {

using specfun::Cplx;
using specfun::EvalOptions;
using exactlin::Permutation;

enum class WindowKind { gaussian, hann, none };

struct WindowSpec {
    WindowKind kind = WindowKind::gaussian;
    double sigma = 0; ///< gaussian width; 0 means the default r_max/4
};

/// Uniform complex samples on [r_min, r_max] (either the r-line or, after the
/// transform, the zeta-line). r_min/r_max are the actual first/last grid
/// points; spacing = (r_max - r_min)/(count - 1).
struct SpectralSamples {
    double r_min = 0;
    double r_max = 0;
    std::size_t count = 0;
    std::vector<Cplx> values;
    WindowSpec window;
    std::vector<double> excluded_points;  ///< r values skipped because of poles
    double unitarity_deviation = 0;       ///< health metric: max | |value| - 1 |

    double spacing() const {
        return count > 1 ? (r_max - r_min) / static_cast<double>(count - 1) : 0.0;
    }
};

/// Sample Phi(r) = c_rank1(1/2 + i r) on a symmetric grid over [-r_max, r_max]
/// with a half-bin offset (r_k = -r_max + (k + 1/2) * 2 r_max / count), which
/// avoids r = 0 exactly. Preconditions: 0 < r_max <= 2000, count a power of
/// two with 1024 <= count <= 2^20. Only r > 0 is evaluated; r < 0 is filled by
/// the exact symmetry Phi(-r) = conj(Phi(r)). Honors SCATTERFLAT_THREADS.
SpectralSamples sample_phi(double r_max, std::size_t count,
                           const WindowSpec& window = {}, const EvalOptions& opts = {});

/// Windowed transform X(zeta_j) = spacing * sum_k w(r_k) x(r_k) exp(i zeta_j r_k)
/// on the zeta-grid zeta_j = (j - count/2) * 2 pi / (count * spacing), i.e.
/// zeta-spacing 2 pi / (r-span). The kernel sign is fixed so a pure tone
/// exp(-i T r) produces its peak at zeta = +T. count must be a power of two.
SpectralSamples windowed_fft(const SpectralSamples& in);

struct Peak {
    double location = 0;  ///< zeta position after 3-point parabolic refinement
    double magnitude = 0;
};

struct PeakReport {
    std::vector<Peak> peaks;  ///< ascending in location
    double threshold = 0;     ///< threshold_ratio * median magnitude
    double resolution = 0;    ///< zeta bin width of the analyzed spectrum
};

/// Local maxima of |X| strictly above threshold_ratio times the median
/// magnitude (median over the whole grid; even-count median takes the upper
/// of the two central order statistics), restricted to zeta > min_zeta
/// (default 0.25, which excludes the zero-time mass at zeta = 0), refined by
/// fitting a parabola through the three bins around each maximum. A maximum
/// must dominate the two bins on each side: one-bin spikes on the modulus are
/// sign-alternation artifacts of real-valued spectra, not resolved peaks.
/// Candidates whose phase reverses bin-to-bin on both sides are likewise
/// rejected: a resolved peak's phase varies slowly across its main lobe,
/// while the truncation-leakage floor alternates at Nyquist rate (the bin
/// spacing times r_max equals pi) and only its broad modulus envelope, not
/// any resolved feature, can crest above threshold.
PeakReport detect_peaks(const SpectralSamples& spectrum, double threshold_ratio = 5.0,
                        double min_zeta = 0.25);

/// Peaks of the transform of Phi that are *stable*: present in the base-window
/// run and recurring, within one base zeta-bin, under both a window swap
/// (gaussian <-> hann, re-windowing the same samples) and a resolution
/// doubling (r_max and count both doubled, halving the bin). Reported
/// locations, magnitudes, threshold and resolution are those of the base run.
/// This is the numerical surrogate for singular support: a smooth window
/// cannot detect a distributional singularity directly, but genuine
/// singularities pin their peak locations while window- and truncation-borne
/// features drift with the analysis scale or vanish under re-windowing.
/// Preconditions: window kind gaussian or hann; doubled parameters must stay
/// in range (r_max <= 1000, count <= 2^19); otherwise as sample_phi.
PeakReport stable_peaks(double r_max, std::size_t count, const WindowSpec& window = {},
                        double threshold_ratio = 5.0, double min_zeta = 0.25,
                        const EvalOptions& opts = {});

struct Sl3Reduction {
    double r = 0;              ///< (eta_a - eta_b) / 2 for the inversion (a,b) of w
    Cplx value;                ///< Phi(r) = c_rank1(1/2 + i r)
    double check_residual = 0; ///< |c_rank2(w, i*eta recentered) - Phi(r)|
};

/// Reduce the rank-two entry S(w, eta) for a simple transposition w ((12) or
/// (23)) to the one-variable function Phi. eta is recentered to sum zero
/// (only the difference eta_a - eta_b enters). The companion check evaluates
/// the rank-two product directly and must agree within 1e-10 (Error if not).
Sl3Reduction sl3_reduce(const Permutation& w, const std::array<double, 3>& eta,
                        const EvalOptions& opts = {});

struct Sl3SingularSupport {
    std::vector<std::array<double, 3>> vectors; ///< (T,T,0) for (12); (0,T,T) for (23)
    PeakReport report;                          ///< underlying one-variable peaks
};

/// Run the full pipeline (sample, window, transform, detect via stable_peaks)
/// and map each stable time T to the three-dimensional singular-support
/// pattern of the transform of S(w, .): the two delta factors of the
/// transform are applied analytically, so only the one-variable transform is
/// computed. Preconditions as stable_peaks; PreconditionError for any w other
/// than the transpositions (12), (23).
Sl3SingularSupport sl3_singular_support(const Permutation& w, double r_max,
                                        std::size_t count, const WindowSpec& window = {},
                                        const EvalOptions& opts = {});

/// Same, but on precomputed r-line samples (for synthetic-signal tests).
/// With a single caller-provided record no stability cross-check is possible,
/// so this maps the raw detect_peaks report.
Sl3SingularSupport sl3_singular_support_from(const Permutation& w,
                                             const SpectralSamples& phi_samples);

} // namespace scatterflat::poisson
