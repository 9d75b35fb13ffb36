#include "polymatch/geometry/geodesics.hpp"

#include <limits>
#include <queue>

namespace polymatch {

std::vector<double> geodesic_distances(const VertexGraph &graph, int source)
{
    const int n = graph.vertex_count();
    if (source < 0 || source >= n)
        throw Error("geodesic_distances: source vertex " +
                    std::to_string(source) + " out of range");

    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    dist[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (d > dist[v])
            continue;
        for (const auto &[w, len] : graph.adjacency[v]) {
            const double candidate = d + len;
            if (candidate < dist[w]) {
                dist[w] = candidate;
                queue.emplace(candidate, w);
            }
        }
    }
    return dist;
}

Eigen::MatrixXd geodesic_distance_rows(const VertexGraph &graph,
                                       const std::vector<int> &sources)
{
    Eigen::MatrixXd rows(sources.size(), graph.vertex_count());
    for (size_t i = 0; i < sources.size(); ++i) {
        const auto dist = geodesic_distances(graph, sources[i]);
        for (int j = 0; j < graph.vertex_count(); ++j)
            rows(static_cast<int>(i), j) = dist[j];
    }
    return rows;
}

std::vector<int> farthest_point_sampling(const VertexGraph &graph, int count,
                                         int seed)
{
    const int n = graph.vertex_count();
    if (count > n)
        throw Error("farthest_point_sampling: requested " +
                    std::to_string(count) + " samples from " +
                    std::to_string(n) + " vertices");
    if (count < 1)
        return {};

    std::vector<int> samples{seed};
    std::vector<double> min_dist = geodesic_distances(graph, seed);
    while (static_cast<int>(samples.size()) < count) {
        int best = -1;
        double best_dist = -1.0;
        for (int v = 0; v < n; ++v)
            if (min_dist[v] > best_dist &&
                std::find(samples.begin(), samples.end(), v) == samples.end()) {
                best = v;
                best_dist = min_dist[v];
            }
        samples.push_back(best);
        const auto dist = geodesic_distances(graph, best);
        for (int v = 0; v < n; ++v)
            min_dist[v] = std::min(min_dist[v], dist[v]);
    }
    return samples;
}

} // namespace polymatch
