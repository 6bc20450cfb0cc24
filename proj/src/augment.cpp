#include "tsfm/augment.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "tsfm/dft.hpp"
#include "tsfm/interp.hpp"

namespace tsfm {

namespace {

void require_nonempty(const std::vector<double>& x, const char* op) {
    if (x.empty()) {
        throw UsageError(std::string(op) + ": empty input");
    }
}

double get_param(const AugmentationSpec& spec, const std::string& name) {
    const auto it = spec.params.find(name);
    if (it == spec.params.end()) {
        throw UsageError("augmentation spec '" + spec.kind + "' missing parameter '" + name + "'");
    }
    return it->second;
}

} // namespace

const std::vector<std::string>& timeclr_kinds() {
    static const std::vector<std::string> kinds = {
        "jitter",         "smooth",   "magnitude_warp", "time_warp", "circular_shift",
        "add_slope",      "add_spike", "add_step",      "mask",      "crop"};
    return kinds;
}

std::string AugmentationSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    j["params"] = params;
    j["subseed"] = subseed;
    return j.dump();
}

AugmentationSpec AugmentationSpec::from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    AugmentationSpec spec;
    spec.kind = j.at("kind").get<std::string>();
    spec.params = j.at("params").get<std::map<std::string, double>>();
    spec.subseed = j.at("subseed").get<std::uint64_t>();
    return spec;
}

std::vector<double> jitter(const std::vector<double>& x, double sigma, Rng& rng) {
    require_nonempty(x, "jitter");
    if (sigma < 0.0) {
        throw UsageError("jitter: sigma must be non-negative");
    }
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] + rng.normal(0.0, sigma);
    }
    return out;
}

std::vector<double> smooth(const std::vector<double>& x, int window) {
    require_nonempty(x, "smooth");
    if (window < 1 || window % 2 == 0) {
        throw UsageError("smooth: window must be a positive odd integer");
    }
    if (window == 1) {
        return x;
    }
    const int n = static_cast<int>(x.size());
    const int half = window / 2;
    std::vector<double> out(x.size());
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int d = -half; d <= half; ++d) {
            const int j = std::clamp(i + d, 0, n - 1);
            acc += x[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = acc / static_cast<double>(window);
    }
    return out;
}

std::vector<double> spline_curve(int length, const std::vector<double>& knot_values) {
    if (length < 1 || knot_values.size() < 2) {
        throw UsageError("spline_curve: need length >= 1 and >= 2 knots");
    }
    if (length == 1) {
        return {knot_values.front()};
    }
    const auto k = knot_values.size();
    std::vector<double> pos(k);
    for (std::size_t i = 0; i < k; ++i) {
        pos[i] = static_cast<double>(i) * static_cast<double>(length - 1) /
                 static_cast<double>(k - 1);
    }
    const CubicSpline spline(pos, knot_values);
    std::vector<double> curve(static_cast<std::size_t>(length));
    for (int t = 0; t < length; ++t) {
        curve[static_cast<std::size_t>(t)] = spline(static_cast<double>(t));
    }
    return curve;
}

std::vector<double> magnitude_warp(const std::vector<double>& x, int knots, double sigma, Rng& rng) {
    require_nonempty(x, "magnitude_warp");
    if (knots < 2) {
        throw UsageError("magnitude_warp: need at least 2 knots");
    }
    if (sigma < 0.0) {
        throw UsageError("magnitude_warp: sigma must be non-negative");
    }
    std::vector<double> knot_values(static_cast<std::size_t>(knots));
    for (auto& v : knot_values) {
        v = rng.normal(1.0, sigma);
    }
    if (x.size() == 1) {
        return {x[0] * knot_values[0]};
    }
    const auto curve = spline_curve(static_cast<int>(x.size()), knot_values);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[i] * curve[i];
    }
    return out;
}

std::vector<double> warp_positions(const std::vector<double>& speed_curve) {
    const auto n = speed_curve.size();
    if (n < 1) {
        throw UsageError("warp_positions: empty curve");
    }
    std::vector<double> pos(n, 0.0);
    if (n == 1) {
        return pos;
    }
    double cum = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        cum += speed_curve[t];
        pos[t] = cum;
    }
    if (!(cum > 0.0)) {
        throw NumericError("warp_positions: cumulative speed is not positive");
    }
    const double scale = static_cast<double>(n - 1) / cum;
    for (auto& p : pos) {
        p *= scale;
    }
    pos.back() = static_cast<double>(n - 1); // exact anchor
    return pos;
}

std::vector<double> time_warp(const std::vector<double>& x, int knots, double sigma, Rng& rng) {
    require_nonempty(x, "time_warp");
    if (knots < 2) {
        throw UsageError("time_warp: need at least 2 knots");
    }
    if (sigma < 0.0) {
        throw UsageError("time_warp: sigma must be non-negative");
    }
    std::vector<double> knot_values(static_cast<std::size_t>(knots));
    for (auto& v : knot_values) {
        v = std::max(0.1, rng.normal(1.0, sigma));
    }
    if (x.size() == 1) {
        return x;
    }
    auto curve = spline_curve(static_cast<int>(x.size()), knot_values);
    for (auto& c : curve) {
        c = std::max(0.1, c); // keep the warp monotone even if the spline overshoots
    }
    const auto pos = warp_positions(curve);
    std::vector<double> out(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        out[t] = lerp_at(x, pos[t]);
    }
    return out;
}

std::vector<double> circular_shift_by(const std::vector<double>& x, int offset) {
    require_nonempty(x, "circular_shift");
    const int n = static_cast<int>(x.size());
    const int s = ((offset % n) + n) % n;
    std::vector<double> out(x.size());
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>((i - s + n) % n)];
    }
    return out;
}

std::vector<double> circular_shift(const std::vector<double>& x, Rng& rng) {
    require_nonempty(x, "circular_shift");
    const auto s = static_cast<int>(rng.uniform_int(0, static_cast<std::int64_t>(x.size()) - 1));
    return circular_shift_by(x, s);
}

std::vector<double> add_slope(const std::vector<double>& x, double amplitude, Rng& rng) {
    require_nonempty(x, "add_slope");
    if (x.size() < 2) {
        throw UsageError("add_slope: series must have length >= 2");
    }
    const double a = rng.uniform(-amplitude, amplitude);
    std::vector<double> out(x.size());
    const double denom = static_cast<double>(x.size() - 1);
    for (std::size_t t = 0; t < x.size(); ++t) {
        out[t] = x[t] + a * static_cast<double>(t) / denom;
    }
    return out;
}

std::vector<double> add_spikes_at(const std::vector<double>& x, const std::vector<int>& positions,
                                  const std::vector<double>& magnitudes) {
    require_nonempty(x, "add_spike");
    if (positions.size() != magnitudes.size()) {
        throw UsageError("add_spikes_at: positions and magnitudes must match");
    }
    std::vector<double> out = x;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out.at(static_cast<std::size_t>(positions[i])) += magnitudes[i];
    }
    return out;
}

std::vector<double> add_spike(const std::vector<double>& x, double amplitude, int max_spikes, Rng& rng) {
    require_nonempty(x, "add_spike");
    if (max_spikes <= 0) {
        return x;
    }
    const int n = static_cast<int>(x.size());
    const int k = std::min(n, static_cast<int>(rng.uniform_int(1, max_spikes)));
    const auto positions = rng.sample_without_replacement(n, k);
    std::vector<double> magnitudes(static_cast<std::size_t>(k));
    for (auto& m : magnitudes) {
        const double sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
        m = sign * rng.uniform(amplitude / 2.0, amplitude);
    }
    return add_spikes_at(x, positions, magnitudes);
}

std::vector<double> add_step_at(const std::vector<double>& x, int position, double height) {
    require_nonempty(x, "add_step");
    std::vector<double> out = x;
    for (std::size_t t = static_cast<std::size_t>(position); t < x.size(); ++t) {
        out[t] += height;
    }
    return out;
}

std::vector<double> add_step(const std::vector<double>& x, double amplitude, Rng& rng) {
    require_nonempty(x, "add_step");
    if (x.size() < 2) {
        throw UsageError("add_step: series must have length >= 2");
    }
    const auto p = static_cast<int>(rng.uniform_int(1, static_cast<std::int64_t>(x.size()) - 1));
    const double h = rng.uniform(-amplitude, amplitude);
    return add_step_at(x, p, h);
}

std::vector<double> mask_window(const std::vector<double>& x, int start, int len) {
    require_nonempty(x, "mask");
    std::vector<double> out = x;
    for (int t = start; t < start + len; ++t) {
        out.at(static_cast<std::size_t>(t)) = 0.0;
    }
    return out;
}

std::vector<double> mask(const std::vector<double>& x, double fraction, Rng& rng) {
    require_nonempty(x, "mask");
    if (fraction < 0.0 || fraction > 1.0) {
        throw UsageError("mask: fraction must lie in [0, 1]");
    }
    const int n = static_cast<int>(x.size());
    const int len = std::min(n, static_cast<int>(std::lround(fraction * n)));
    if (len == 0) {
        return x;
    }
    const auto start = static_cast<int>(rng.uniform_int(0, n - len));
    return mask_window(x, start, len);
}

std::vector<double> crop_window(const std::vector<double>& x, int start, int len) {
    require_nonempty(x, "crop");
    if (start < 0 || len < 1 || start + len > static_cast<int>(x.size())) {
        throw UsageError("crop_window: window out of bounds");
    }
    const std::vector<double> piece(x.begin() + start, x.begin() + start + len);
    return resize_linear(piece, static_cast<int>(x.size()));
}

std::vector<double> crop(const std::vector<double>& x, double fraction, Rng& rng) {
    require_nonempty(x, "crop");
    if (fraction <= 0.0 || fraction > 1.0) {
        throw UsageError("crop: fraction must lie in (0, 1]");
    }
    const int n = static_cast<int>(x.size());
    const int len = std::min(n, std::max(2, static_cast<int>(std::lround(fraction * n))));
    const auto start = static_cast<int>(rng.uniform_int(0, n - len));
    return crop_window(x, start, len);
}

std::vector<double> scale(const std::vector<double>& x, double sigma, Rng& rng) {
    require_nonempty(x, "scale");
    if (sigma < 0.0) {
        throw UsageError("scale: sigma must be non-negative");
    }
    const double s = rng.normal(1.0, sigma);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = s * x[i];
    }
    return out;
}

std::vector<double> negate(const std::vector<double>& x) {
    require_nonempty(x, "negate");
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = -x[i];
    }
    return out;
}

std::vector<double> scale_or_negate(const std::vector<double>& x, double sigma, Rng& rng) {
    auto out = scale(x, sigma, rng);
    if (rng.bernoulli(0.5)) {
        out = negate(out);
    }
    return out;
}

std::vector<double> freq_perturb(const std::vector<double>& x, int max_bins, double boost, Rng& rng) {
    require_nonempty(x, "freq_perturb");
    if (max_bins < 0) {
        throw UsageError("freq_perturb: max_bins must be non-negative");
    }
    auto spectrum = dft_forward(x);
    const int n = static_cast<int>(x.size());
    const int half = n / 2; // selectable bins 1..half
    const int k = std::min(max_bins, half);
    if (k > 0) {
        auto picks = rng.sample_without_replacement(half, k);
        for (int p : picks) {
            const int bin = p + 1;
            const int mirror = n - bin;
            if (rng.bernoulli(0.5)) {
                spectrum[static_cast<std::size_t>(bin)] = 0.0;
                spectrum[static_cast<std::size_t>(mirror)] = 0.0;
            } else {
                const double f = rng.uniform(1.0, 1.0 + boost);
                spectrum[static_cast<std::size_t>(bin)] *= f;
                if (mirror != bin) {
                    spectrum[static_cast<std::size_t>(mirror)] *= f;
                }
            }
        }
    }
    return dft_inverse_real(spectrum);
}

MixSample mix(std::vector<double> x_i, std::vector<double> x_j, double lambda) {
    if (x_i.size() != x_j.size()) {
        throw UsageError("mix: source lengths differ");
    }
    require_nonempty(x_i, "mix");
    if (lambda < 0.0 || lambda > 1.0) {
        throw UsageError("mix: lambda must lie in [0, 1]");
    }
    MixSample sample;
    sample.lambda = lambda;
    sample.x_k.resize(x_i.size());
    for (std::size_t t = 0; t < x_i.size(); ++t) {
        sample.x_k[t] = lambda * x_i[t] + (1.0 - lambda) * x_j[t];
    }
    sample.x_i = std::move(x_i);
    sample.x_j = std::move(x_j);
    return sample;
}

MixSample mix(std::vector<double> x_i, std::vector<double> x_j, double beta_alpha, Rng& rng) {
    const double lambda = rng.beta(beta_alpha, beta_alpha);
    return mix(std::move(x_i), std::move(x_j), lambda);
}

std::vector<double> apply_spec(const std::vector<double>& x, const AugmentationSpec& spec) {
    require_nonempty(x, "apply_spec");
    Rng rng(spec.subseed);
    const auto& k = spec.kind;
    if (k == "jitter") {
        return jitter(x, get_param(spec, "sigma"), rng);
    }
    if (k == "smooth") {
        return smooth(x, static_cast<int>(get_param(spec, "window")));
    }
    if (k == "magnitude_warp") {
        return magnitude_warp(x, static_cast<int>(get_param(spec, "knots")),
                              get_param(spec, "sigma"), rng);
    }
    if (k == "time_warp") {
        return time_warp(x, static_cast<int>(get_param(spec, "knots")),
                         get_param(spec, "sigma"), rng);
    }
    if (k == "circular_shift") {
        return circular_shift(x, rng);
    }
    if (k == "add_slope") {
        return add_slope(x, get_param(spec, "amplitude"), rng);
    }
    if (k == "add_spike") {
        return add_spike(x, get_param(spec, "amplitude"),
                         static_cast<int>(get_param(spec, "max_spikes")), rng);
    }
    if (k == "add_step") {
        return add_step(x, get_param(spec, "amplitude"), rng);
    }
    if (k == "mask") {
        return mask(x, get_param(spec, "fraction"), rng);
    }
    if (k == "crop") {
        return crop(x, get_param(spec, "fraction"), rng);
    }
    if (k == "scale") {
        return scale(x, get_param(spec, "sigma"), rng);
    }
    if (k == "negate") {
        return negate(x);
    }
    if (k == "freq_perturb") {
        return freq_perturb(x, static_cast<int>(get_param(spec, "max_bins")),
                            get_param(spec, "boost"), rng);
    }
    throw UsageError("apply_spec: unknown augmentation kind '" + k + "'");
}

std::pair<std::vector<double>, AugmentationSpec>
sample_timeclr_view(const std::vector<double>& x, const AugmentConfig& cfg, Rng& rng) {
    require_nonempty(x, "sample_timeclr_view");
    const auto& kinds = timeclr_kinds();
    AugmentationSpec spec;
    spec.kind = kinds[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(kinds.size()) - 1))];
    if (spec.kind == "jitter") {
        spec.params["sigma"] = rng.uniform(cfg.jitter_sigma_lo, cfg.jitter_sigma_hi);
    } else if (spec.kind == "smooth") {
        const auto i = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(cfg.smooth_windows.size()) - 1));
        spec.params["window"] = static_cast<double>(cfg.smooth_windows[i]);
    } else if (spec.kind == "magnitude_warp" || spec.kind == "time_warp") {
        spec.params["knots"] = static_cast<double>(cfg.warp_knots);
        spec.params["sigma"] = rng.uniform(cfg.warp_sigma_lo, cfg.warp_sigma_hi);
    } else if (spec.kind == "add_slope" || spec.kind == "add_step") {
        spec.params["amplitude"] = cfg.amplitude;
    } else if (spec.kind == "add_spike") {
        spec.params["amplitude"] = cfg.amplitude;
        spec.params["max_spikes"] = static_cast<double>(cfg.max_spikes);
    } else if (spec.kind == "mask") {
        spec.params["fraction"] = rng.uniform(cfg.mask_fraction_lo, cfg.mask_fraction_hi);
    } else if (spec.kind == "crop") {
        spec.params["fraction"] = rng.uniform(cfg.crop_fraction_lo, cfg.crop_fraction_hi);
    }
    spec.subseed = rng.next_u64();
    return {apply_spec(x, spec), spec};
}

} // namespace tsfm
