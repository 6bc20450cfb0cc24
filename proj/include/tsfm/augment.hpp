#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tsfm/rng.hpp"

namespace tsfm {

/// One named augmentation with its sampled parameters. `subseed` keys the
/// per-application randomness, so apply_spec replays the exact output.
struct AugmentationSpec {
    std::string kind;
    std::map<std::string, double> params;
    std::uint64_t subseed = 0;

    std::string to_json() const;
    static AugmentationSpec from_json(const std::string& text);
};

/// Parameter ranges for sampled augmentations. Magnitudes are sized for
/// z-normalized (unit variance) inputs.
struct AugmentConfig {
    double jitter_sigma_lo = 0.01;
    double jitter_sigma_hi = 0.2;
    std::vector<int> smooth_windows = {3, 5, 7};
    int warp_knots = 4;
    double warp_sigma_lo = 0.05;
    double warp_sigma_hi = 0.3;
    double amplitude = 1.0; // slope / spike / step
    int max_spikes = 3;
    double mask_fraction_lo = 0.05;
    double mask_fraction_hi = 0.3;
    double crop_fraction_lo = 0.5;
    double crop_fraction_hi = 0.9;
    int freq_max_bins = 3;
    double freq_boost = 0.5;
    double scale_sigma = 0.1; // random scaling for the scale / negate pair
    double beta_alpha = 0.2;  // mixing coefficient distribution
};

/// The ten kinds the TimeCLR view sampler draws from, in draw order.
const std::vector<std::string>& timeclr_kinds();

// Transforms. All preserve length and throw UsageError on empty input or
// parameters outside their documented range.
std::vector<double> jitter(const std::vector<double>& x, double sigma, Rng& rng);
std::vector<double> smooth(const std::vector<double>& x, int window);
std::vector<double> magnitude_warp(const std::vector<double>& x, int knots, double sigma, Rng& rng);
std::vector<double> time_warp(const std::vector<double>& x, int knots, double sigma, Rng& rng);
std::vector<double> circular_shift(const std::vector<double>& x, Rng& rng);
std::vector<double> add_slope(const std::vector<double>& x, double amplitude, Rng& rng);
std::vector<double> add_spike(const std::vector<double>& x, double amplitude, int max_spikes, Rng& rng);
std::vector<double> add_step(const std::vector<double>& x, double amplitude, Rng& rng);
std::vector<double> mask(const std::vector<double>& x, double fraction, Rng& rng);
std::vector<double> crop(const std::vector<double>& x, double fraction, Rng& rng);
std::vector<double> scale(const std::vector<double>& x, double sigma, Rng& rng);
std::vector<double> negate(const std::vector<double>& x);
std::vector<double> scale_or_negate(const std::vector<double>& x, double sigma, Rng& rng);
std::vector<double> freq_perturb(const std::vector<double>& x, int max_bins, double boost, Rng& rng);

// Deterministic building blocks, exposed so tests can pin the random parts.
std::vector<double> spline_curve(int length, const std::vector<double>& knot_values);
std::vector<double> warp_positions(const std::vector<double>& speed_curve);
std::vector<double> circular_shift_by(const std::vector<double>& x, int offset);
std::vector<double> add_spikes_at(const std::vector<double>& x, const std::vector<int>& positions,
                                  const std::vector<double>& magnitudes);
std::vector<double> add_step_at(const std::vector<double>& x, int position, double height);
std::vector<double> mask_window(const std::vector<double>& x, int start, int len);
std::vector<double> crop_window(const std::vector<double>& x, int start, int len);

/// lambda * x_i + (1 - lambda) * x_j over equal-length sources.
struct MixSample {
    std::vector<double> x_i;
    std::vector<double> x_j;
    double lambda = 0.0;
    std::vector<double> x_k;
};

MixSample mix(std::vector<double> x_i, std::vector<double> x_j, double lambda);
MixSample mix(std::vector<double> x_i, std::vector<double> x_j, double beta_alpha, Rng& rng);

/// Re-applies a sampled spec. Replays the exact output the sampler produced.
std::vector<double> apply_spec(const std::vector<double>& x, const AugmentationSpec& spec);

/// TimeCLR view: one kind drawn uniformly from the ten, parameters drawn from
/// the configured ranges, applied once.
std::pair<std::vector<double>, AugmentationSpec>
sample_timeclr_view(const std::vector<double>& x, const AugmentConfig& cfg, Rng& rng);

} // namespace tsfm
