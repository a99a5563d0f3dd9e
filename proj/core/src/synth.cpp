#include "traj_manifold/synth.hpp"

#include "traj_manifold/errors.hpp"
#include "traj_manifold/numeric_io.hpp"
#include "traj_manifold/rng.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <string>
#include <vector>

namespace traj_manifold {

namespace {

// Roll geometry: the spiral (u cos u, u sin u) swept over u in
// [8.5, 17.0] per trajectory, height = the trajectory's latent parameter.
// The sweep covers ~1.35 turns; with the default heights the winding gap
// (2*pi in radius) stays above the 8-NN radius while the height spread
// keeps a visible share of the total variance.
constexpr double kRollSweepBegin = 8.5;
constexpr double kRollSweepEnd = 17.0;
constexpr double kDefaultHeightStep = 3.5; // default roll heights: 3.5*i
constexpr double kDefaultAngleStep = 0.8;  // default fan angles: 0.8*i rad
constexpr double kFanRadialStep = 1.0;
constexpr double kPairStep = 1.0;

int min_ambient_dim(ProcessFamily family) {
    switch (family) {
    case ProcessFamily::SwissRollTrajectories:
        return 3;
    case ProcessFamily::DivergingFan:
        return 2;
    case ProcessFamily::InterleavedPair:
        return 1;
    }
    return 1;
}

std::vector<double> resolve_params(const ProcessSpec& spec) {
    const std::size_t count = static_cast<std::size_t>(spec.trajectory_count);
    if (!spec.params.empty()) {
        if (spec.params.size() != count) {
            throw ParameterError("spec needs one latent parameter per trajectory (" +
                                 std::to_string(count) + "), got " +
                                 std::to_string(spec.params.size()));
        }
        for (double p : spec.params) {
            if (!std::isfinite(p)) {
                throw ParameterError("non-finite latent parameter in spec");
            }
        }
        return spec.params;
    }
    std::vector<double> params(count);
    for (std::size_t i = 0; i < count; ++i) {
        switch (spec.family) {
        case ProcessFamily::SwissRollTrajectories:
            params[i] = kDefaultHeightStep * static_cast<double>(i);
            break;
        case ProcessFamily::DivergingFan:
            params[i] = kDefaultAngleStep * static_cast<double>(i);
            break;
        case ProcessFamily::InterleavedPair:
            params[i] = static_cast<double>(i);
            break;
        }
    }
    return params;
}

const char* param_name(ProcessFamily family) {
    switch (family) {
    case ProcessFamily::SwissRollTrajectories:
        return "height";
    case ProcessFamily::DivergingFan:
        return "angle";
    case ProcessFamily::InterleavedPair:
        return "offset";
    }
    return "value";
}

} // namespace

std::string_view family_name(ProcessFamily family) {
    switch (family) {
    case ProcessFamily::SwissRollTrajectories:
        return "swissroll";
    case ProcessFamily::DivergingFan:
        return "fan";
    case ProcessFamily::InterleavedPair:
        return "interleaved";
    }
    return "unknown";
}

std::optional<ProcessFamily> parse_family(std::string_view name) {
    if (name == "swissroll") {
        return ProcessFamily::SwissRollTrajectories;
    }
    if (name == "fan") {
        return ProcessFamily::DivergingFan;
    }
    if (name == "interleaved") {
        return ProcessFamily::InterleavedPair;
    }
    return std::nullopt;
}

TrajectoryDataset generate(const ProcessSpec& spec) {
    const int traj_count = spec.trajectory_count;
    const int m = spec.points_per_trajectory;
    const int dim = spec.ambient_dim;

    if (traj_count < 1) {
        throw ParameterError("spec needs at least one trajectory");
    }
    if (spec.family == ProcessFamily::InterleavedPair && traj_count != 2) {
        throw ParameterError("the interleaved family is a pair: T must be 2");
    }
    if (m < 2) {
        throw ParameterError("spec needs at least 2 points per trajectory");
    }
    if (dim < min_ambient_dim(spec.family)) {
        throw ParameterError("ambient dimension too small for family '" +
                             std::string(family_name(spec.family)) + "': need D >= " +
                             std::to_string(min_ambient_dim(spec.family)));
    }
    if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
        throw ParameterError("noise_sigma must be finite and >= 0");
    }
    const std::vector<double> params = resolve_params(spec);

    const Index n = static_cast<Index>(traj_count) * m;
    TrajectoryDataset dataset;
    dataset.points = Eigen::MatrixXd::Zero(n, dim);
    dataset.trajectory_of.resize(static_cast<std::size_t>(n));
    dataset.time_index_of.resize(static_cast<std::size_t>(n));
    dataset.trajectory_labels.resize(static_cast<std::size_t>(traj_count));
    dataset.param_names = {param_name(spec.family)};
    dataset.trajectory_params.resize(traj_count, 1);

    for (int g = 0; g < traj_count; ++g) {
        dataset.trajectory_labels[static_cast<std::size_t>(g)] = "g" + std::to_string(g);
        dataset.trajectory_params(g, 0) = params[static_cast<std::size_t>(g)];
    }

    // Interleaved pair: slots 0..2m-1 along the line in an A B B A pattern,
    // so every interior point's two nearest neighbors span both
    // trajectories. The latent values are recorded as metadata only.
    std::vector<std::vector<int>> pair_slots;
    if (spec.family == ProcessFamily::InterleavedPair) {
        pair_slots.assign(2, {});
        for (int s = 0; s < 2 * m; ++s) {
            pair_slots[static_cast<std::size_t>(((s + 1) / 2) % 2)].push_back(s);
        }
    }

    const CounterRng rng{spec.seed};
    for (int g = 0; g < traj_count; ++g) {
        const double latent = params[static_cast<std::size_t>(g)];
        for (int t = 0; t < m; ++t) {
            const Index i = static_cast<Index>(g) * m + t;
            dataset.trajectory_of[static_cast<std::size_t>(i)] = g;
            dataset.time_index_of[static_cast<std::size_t>(i)] = t;

            switch (spec.family) {
            case ProcessFamily::SwissRollTrajectories: {
                const double u = kRollSweepBegin + (kRollSweepEnd - kRollSweepBegin) *
                                                       static_cast<double>(t) /
                                                       static_cast<double>(m - 1);
                dataset.points(i, 0) = u * std::cos(u);
                dataset.points(i, 1) = latent;
                dataset.points(i, 2) = u * std::sin(u);
                break;
            }
            case ProcessFamily::DivergingFan: {
                const double radius = kFanRadialStep * static_cast<double>(t);
                dataset.points(i, 0) = radius * std::cos(latent);
                dataset.points(i, 1) = radius * std::sin(latent);
                break;
            }
            case ProcessFamily::InterleavedPair: {
                dataset.points(i, 0) =
                    kPairStep *
                    pair_slots[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)];
                break;
            }
            }

            if (spec.noise_sigma > 0.0) {
                for (int f = 0; f < dim; ++f) {
                    const std::uint64_t pair_index =
                        static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(dim) +
                        static_cast<std::uint64_t>(f);
                    dataset.points(i, f) += spec.noise_sigma * rng.gaussian(pair_index);
                }
            }
        }
    }
    return dataset;
}

namespace {

std::string_view trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    return text.substr(begin, end - begin);
}

std::vector<double> parse_param_list(std::string_view text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        values.push_back(parse_double(trim(text.substr(start, comma - start))));
        start = comma + 1;
        if (comma == text.size()) {
            break;
        }
    }
    return values;
}

} // namespace

ProcessSpec parse_process_spec(std::istream& in) {
    ProcessSpec spec;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        const std::string_view content = trim(line);
        if (content.empty()) {
            continue;
        }
        const std::size_t equals = content.find('=');
        if (equals == std::string_view::npos) {
            throw ParameterError("spec line " + std::to_string(line_number) +
                                 ": expected 'key = value'");
        }
        const std::string_view key = trim(content.substr(0, equals));
        const std::string_view value = trim(content.substr(equals + 1));
        try {
            if (key == "family") {
                const auto family = parse_family(value);
                if (!family) {
                    throw ParameterError("unknown family '" + std::string(value) + "'");
                }
                spec.family = *family;
            } else if (key == "T") {
                spec.trajectory_count = static_cast<int>(parse_integer(value));
            } else if (key == "m") {
                spec.points_per_trajectory = static_cast<int>(parse_integer(value));
            } else if (key == "D") {
                spec.ambient_dim = static_cast<int>(parse_integer(value));
            } else if (key == "noise_sigma") {
                spec.noise_sigma = parse_double(value);
            } else if (key == "seed") {
                std::uint64_t seed = 0;
                const auto trimmed = trim(value);
                auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(),
                                                 seed);
                if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size()) {
                    throw ParameterError("bad seed value");
                }
                spec.seed = seed;
            } else if (key == "params") {
                spec.params = parse_param_list(value);
            } else {
                throw ParameterError("unknown key '" + std::string(key) + "'");
            }
        } catch (const ValidationError& e) {
            throw ParameterError("spec line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    return spec;
}

} // namespace traj_manifold
