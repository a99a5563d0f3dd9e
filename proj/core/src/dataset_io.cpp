#include "traj_manifold/dataset_io.hpp"

#include "traj_manifold/errors.hpp"
#include "traj_manifold/numeric_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace traj_manifold {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

struct ColumnRoles {
    Index traj_column = -1;
    Index time_column = -1;
    std::vector<std::pair<Index, std::string>> param_columns; // (column, name)
    std::vector<std::pair<Index, Index>> feature_columns;     // (column, feature index)
};

ColumnRoles read_header(const std::vector<std::string>& header, const CsvSchema& schema) {
    ColumnRoles roles;
    std::vector<std::pair<Index, Index>> features;
    for (Index c = 0; c < static_cast<Index>(header.size()); ++c) {
        const std::string& name = header[static_cast<std::size_t>(c)];
        if (name == schema.trajectory_column) {
            if (roles.traj_column >= 0) {
                throw ValidationError("duplicate trajectory column in header");
            }
            roles.traj_column = c;
        } else if (name == schema.time_column) {
            if (roles.time_column >= 0) {
                throw ValidationError("duplicate time column in header");
            }
            roles.time_column = c;
        } else if (name.starts_with(schema.param_prefix)) {
            std::string param = name.substr(schema.param_prefix.size());
            if (param.empty()) {
                throw ValidationError("parameter column with empty name in header");
            }
            roles.param_columns.emplace_back(c, std::move(param));
        } else if (name.starts_with(schema.feature_prefix)) {
            const std::string suffix = name.substr(schema.feature_prefix.size());
            Index feature = -1;
            try {
                feature = static_cast<Index>(parse_integer(suffix));
            } catch (const ValidationError&) {
                throw ValidationError("unrecognized column '" + name + "' in header");
            }
            if (feature < 0) {
                throw ValidationError("negative feature index in column '" + name + "'");
            }
            features.emplace_back(c, feature);
        } else {
            throw ValidationError("unrecognized column '" + name + "' in header");
        }
    }
    if (roles.traj_column < 0) {
        throw ValidationError("missing trajectory column '" + schema.trajectory_column +
                              "' in header");
    }
    if (roles.time_column < 0) {
        throw ValidationError("missing time column '" + schema.time_column + "' in header");
    }
    if (features.empty()) {
        throw ValidationError("no feature columns in header");
    }

    // Feature indices must form exactly 0..D-1 (any column order).
    std::sort(features.begin(), features.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (Index i = 0; i < static_cast<Index>(features.size()); ++i) {
        if (features[static_cast<std::size_t>(i)].second != i) {
            throw ValidationError("feature columns must form a contiguous range " +
                                  schema.feature_prefix + "0.." + schema.feature_prefix +
                                  "{D-1}");
        }
    }
    roles.feature_columns = std::move(features);
    return roles;
}

struct RawRow {
    double time = 0.0;
    std::vector<double> params;
    std::vector<double> features;
    long long row_number = 0; // 1-based data row
};

} // namespace

TrajectoryDataset load_dataset(std::istream& in, const CsvSchema& schema) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    if (lines.empty()) {
        throw ValidationError("empty input: missing header row");
    }

    const auto header = split_fields(lines.front());
    const ColumnRoles roles = read_header(header, schema);
    const std::size_t column_count = header.size();
    const Index dim = static_cast<Index>(roles.feature_columns.size());
    const Index param_count = static_cast<Index>(roles.param_columns.size());

    std::vector<std::string> labels;
    std::map<std::string, int> label_to_id;
    std::vector<std::vector<RawRow>> rows_by_trajectory;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const long long row_number = static_cast<long long>(li);
        if (lines[li].empty()) {
            throw ValidationError("malformed row " + std::to_string(row_number) +
                                  ": empty line inside data");
        }
        const auto fields = split_fields(lines[li]);
        if (fields.size() != column_count) {
            throw ValidationError("malformed row " + std::to_string(row_number) + ": expected " +
                                  std::to_string(column_count) + " fields, got " +
                                  std::to_string(fields.size()));
        }

        const std::string& label = fields[static_cast<std::size_t>(roles.traj_column)];
        if (label.empty()) {
            throw ValidationError("malformed row " + std::to_string(row_number) +
                                  ": empty trajectory id");
        }

        RawRow raw;
        raw.row_number = row_number;
        try {
            raw.time = parse_double(fields[static_cast<std::size_t>(roles.time_column)]);
        } catch (const ValidationError& e) {
            throw ValidationError("malformed row " + std::to_string(row_number) +
                                  ": bad time value: " + e.what());
        }
        if (!std::isfinite(raw.time)) {
            throw ValidationError("malformed row " + std::to_string(row_number) +
                                  ": non-finite time value");
        }
        raw.params.reserve(static_cast<std::size_t>(param_count));
        for (const auto& [column, name] : roles.param_columns) {
            double value = 0.0;
            try {
                value = parse_double(fields[static_cast<std::size_t>(column)]);
            } catch (const ValidationError& e) {
                throw ValidationError("malformed row " + std::to_string(row_number) +
                                      ": bad value for param:" + name + ": " + e.what());
            }
            if (!std::isfinite(value)) {
                throw ValidationError("non-finite parameter at row " +
                                      std::to_string(row_number) + " (param:" + name + ")");
            }
            raw.params.push_back(value);
        }
        raw.features.resize(static_cast<std::size_t>(dim));
        for (const auto& [column, feature] : roles.feature_columns) {
            double value = 0.0;
            try {
                value = parse_double(fields[static_cast<std::size_t>(column)]);
            } catch (const ValidationError& e) {
                throw ValidationError("malformed row " + std::to_string(row_number) +
                                      ": bad feature value: " + e.what());
            }
            if (!std::isfinite(value)) {
                throw ValidationError("non-finite feature at row " +
                                      std::to_string(row_number) + " (" +
                                      schema.feature_prefix + std::to_string(feature) + ")");
            }
            raw.features[static_cast<std::size_t>(feature)] = value;
        }

        auto [it, inserted] = label_to_id.try_emplace(label, static_cast<int>(labels.size()));
        if (inserted) {
            labels.push_back(label);
            rows_by_trajectory.emplace_back();
        }
        rows_by_trajectory[static_cast<std::size_t>(it->second)].push_back(std::move(raw));
    }

    if (rows_by_trajectory.empty()) {
        throw ValidationError("no data rows after header");
    }

    const int traj_count = static_cast<int>(labels.size());
    Index n = 0;
    for (const auto& rows : rows_by_trajectory) {
        n += static_cast<Index>(rows.size());
    }
    if (n < 2) {
        throw ValidationError("dataset must contain at least 2 points, has " + std::to_string(n));
    }

    TrajectoryDataset dataset;
    dataset.points.resize(n, dim);
    dataset.trajectory_of.resize(static_cast<std::size_t>(n));
    dataset.time_index_of.resize(static_cast<std::size_t>(n));
    dataset.trajectory_labels = labels;
    dataset.param_names.reserve(static_cast<std::size_t>(param_count));
    for (const auto& [column, name] : roles.param_columns) {
        dataset.param_names.push_back(name);
    }
    dataset.trajectory_params.resize(traj_count, param_count);

    // Canonical storage order: grouped by trajectory (first-appearance
    // order), ascending time within each trajectory. Shuffling input rows
    // within a trajectory therefore yields the identical dataset.
    Index slot = 0;
    for (int t = 0; t < traj_count; ++t) {
        auto& rows = rows_by_trajectory[static_cast<std::size_t>(t)];
        std::vector<std::size_t> order(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            order[i] = i;
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return rows[a].time < rows[b].time;
        });
        for (std::size_t rank = 0; rank + 1 < order.size(); ++rank) {
            if (rows[order[rank]].time == rows[order[rank + 1]].time) {
                throw ValidationError("duplicate (trajectory, time) pair: trajectory '" +
                                      labels[static_cast<std::size_t>(t)] + "', time " +
                                      format_double(rows[order[rank]].time));
            }
        }
        for (std::size_t rank = 0; rank < order.size(); ++rank) {
            const RawRow& raw = rows[order[rank]];
            const Index i = slot++;
            dataset.trajectory_of[static_cast<std::size_t>(i)] = t;
            dataset.time_index_of[static_cast<std::size_t>(i)] = static_cast<int>(rank);
            for (Index f = 0; f < dim; ++f) {
                dataset.points(i, f) = raw.features[static_cast<std::size_t>(f)];
            }
        }
        // Parameter columns must be constant within a trajectory.
        for (Index p = 0; p < param_count; ++p) {
            const double first = rows.front().params[static_cast<std::size_t>(p)];
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].params[static_cast<std::size_t>(p)] != first) {
                    throw ValidationError(
                        "param:" + dataset.param_names[static_cast<std::size_t>(p)] +
                        " is not constant within trajectory '" +
                        labels[static_cast<std::size_t>(t)] + "' (row " +
                        std::to_string(rows[i].row_number) + ")");
                }
            }
            dataset.trajectory_params(t, p) = first;
        }
    }

    require_valid(dataset);
    return dataset;
}

TrajectoryDataset load_dataset(const std::filesystem::path& path, const CsvSchema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open input file: " + path.string());
    }
    return load_dataset(in, schema);
}

std::string save_dataset(const TrajectoryDataset& dataset, const CsvSchema& schema) {
    std::string out;
    out += schema.trajectory_column;
    out += ',';
    out += schema.time_column;
    for (const auto& name : dataset.param_names) {
        out += ',';
        out += schema.param_prefix;
        out += name;
    }
    for (Index f = 0; f < dataset.dim(); ++f) {
        out += ',';
        out += schema.feature_prefix;
        out += std::to_string(f);
    }
    out += '\n';

    for (Index i = 0; i < dataset.n(); ++i) {
        const int traj = dataset.trajectory_of[static_cast<std::size_t>(i)];
        out += dataset.trajectory_labels[static_cast<std::size_t>(traj)];
        out += ',';
        out += format_double(static_cast<double>(dataset.time_index_of[static_cast<std::size_t>(i)]));
        for (Index p = 0; p < dataset.trajectory_params.cols(); ++p) {
            out += ',';
            out += format_double(dataset.trajectory_params(traj, p));
        }
        for (Index f = 0; f < dataset.dim(); ++f) {
            out += ',';
            out += format_double(dataset.points(i, f));
        }
        out += '\n';
    }
    return out;
}

void save_dataset(const std::filesystem::path& path, const TrajectoryDataset& dataset,
                  const CsvSchema& schema) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open output file: " + path.string());
    }
    out << save_dataset(dataset, schema);
    if (!out) {
        throw ValidationError("failed writing output file: " + path.string());
    }
}

} // namespace traj_manifold
