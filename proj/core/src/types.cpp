#include "traj_manifold/types.hpp"

#include <algorithm>

namespace traj_manifold {

std::string_view method_name(Method method) {
    switch (method) {
    case Method::Pca:
        return "pca";
    case Method::Mds:
        return "mds";
    case Method::Isomap:
        return "isomap";
    case Method::EntropyIsomap:
        return "entropy-isomap";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "pca") {
        return Method::Pca;
    }
    if (name == "mds") {
        return Method::Mds;
    }
    if (name == "isomap") {
        return Method::Isomap;
    }
    if (name == "entropy-isomap") {
        return Method::EntropyIsomap;
    }
    return std::nullopt;
}

std::vector<Index> Embedding::kept_points(Index total) const {
    std::vector<Index> kept;
    kept.reserve(static_cast<std::size_t>(total) - excluded_points.size());
    std::size_t cursor = 0;
    for (Index i = 0; i < total; ++i) {
        if (cursor < excluded_points.size() && excluded_points[cursor] == i) {
            ++cursor;
            continue;
        }
        kept.push_back(i);
    }
    return kept;
}

} // namespace traj_manifold
