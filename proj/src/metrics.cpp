#include "coanet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coanet/csv.hpp"
#include "coanet/util.hpp"

namespace coanet {

std::string missing_reason_slug(MissingReason r) {
    switch (r) {
        case MissingReason::None: return "none";
        case MissingReason::EmptyGraph: return "empty_graph";
        case MissingReason::NoEdges: return "no_edges";
        case MissingReason::ZeroMeanDegree: return "zero_mean_degree";
        case MissingReason::ZeroDegreeVariance: return "zero_degree_variance";
        case MissingReason::NoConnectedPairs: return "no_connected_pairs";
        case MissingReason::RichClubTooSmall: return "rich_club_too_small";
        case MissingReason::ComponentTooSmall: return "component_too_small";
        case MissingReason::TooFewNodes: return "too_few_nodes";
        case MissingReason::NoPairsAfterRemoval: return "no_pairs_after_removal";
        case MissingReason::NoConvergence: return "no_convergence";
    }
    return "unknown";
}

std::optional<MissingReason> missing_reason_from_slug(std::string_view slug) {
    for (int i = 0; i <= static_cast<int>(MissingReason::NoConvergence); ++i) {
        auto r = static_cast<MissingReason>(i);
        if (missing_reason_slug(r) == slug) return r;
    }
    return std::nullopt;
}

std::span<const std::string> metric_names() {
    static const std::vector<std::string> names = {
        "numberNodes",          "numberEdges",
        "numberIsolatedNodes",  "percIsolatedNodes",
        "avgDegreeCentrality",  "coefficientVariation",
        "clusterCoefficient",   "avgPathLength",
        "networkDiameter",      "avgBetweennessCentrality",
        "eigenCentrality",      "assortCoefficient",
        "richClubCoefficient",  "swanConnectivityMin",
        "swanConnectivityMax",  "researchersPerPublication",
    };
    return names;
}

const std::string& metric_name(Metric m) {
    return metric_names()[static_cast<std::size_t>(m)];
}

DegreeStats degree_stats(const SimpleGraph& g) {
    const int n = g.node_count();
    if (n == 0) throw EmptyGraph();
    double sum = 0;
    for (int v = 0; v < n; ++v) sum += g.degree(v);
    double mean = sum / n;
    DegreeStats out;
    out.average = MetricValue::of(mean);
    if (mean == 0.0) {
        out.coefficient_variation = MetricValue::missing(MissingReason::ZeroMeanDegree);
        return out;
    }
    double ss = 0;
    for (int v = 0; v < n; ++v) {
        double d = g.degree(v) - mean;
        ss += d * d;
    }
    out.coefficient_variation = MetricValue::of(std::sqrt(ss / n) / mean);
    return out;
}

double clustering_coefficient(const SimpleGraph& g) {
    const int n = g.node_count();
    if (n == 0) throw EmptyGraph();
    double total = 0;
    for (int v = 0; v < n; ++v) {
        auto nbrs = g.neighbors(v);
        const std::size_t d = nbrs.size();
        if (d < 2) continue;
        long links = 0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (g.has_edge(nbrs[i], nbrs[j])) ++links;
        total += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * (static_cast<double>(d) - 1));
    }
    return total / n;
}

namespace {

// single-source BFS over the graph; dist must be sized n and is overwritten
void bfs_distances(const SimpleGraph& g, int source, std::vector<int>& dist, std::vector<int>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(source);
    dist[static_cast<std::size_t>(source)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int u = queue[head];
        for (int w : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(w)] == -1) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(w);
            }
        }
    }
}

}  // namespace

PathMetrics path_metrics(const SimpleGraph& g) {
    const int n = g.node_count();
    if (n == 0) throw EmptyGraph();
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<int> queue;
    long connected_pairs = 0;
    double dist_sum = 0;
    int diameter = 0;
    for (int s = 0; s < n; ++s) {
        bfs_distances(g, s, dist, queue);
        for (int t = s + 1; t < n; ++t) {
            int d = dist[static_cast<std::size_t>(t)];
            if (d < 0) continue;
            ++connected_pairs;
            dist_sum += d;
            diameter = std::max(diameter, d);
        }
    }
    PathMetrics out;
    if (connected_pairs == 0) {
        out.average_path_length = MetricValue::missing(MissingReason::NoConnectedPairs);
        out.diameter = MetricValue::missing(MissingReason::NoConnectedPairs);
    } else {
        out.average_path_length = MetricValue::of(dist_sum / static_cast<double>(connected_pairs));
        out.diameter = MetricValue::of(diameter);
    }
    return out;
}

BetweennessResult betweenness(const SimpleGraph& g) {
    const int n = g.node_count();
    if (n == 0) throw EmptyGraph();
    BetweennessResult out;
    out.per_node.assign(static_cast<std::size_t>(n), 0.0);

    // Brandes accumulation; each unordered pair is visited from both ends, so
    // the accumulated dependencies are halved at the end.
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<double> sigma(static_cast<std::size_t>(n));
    std::vector<double> delta(static_cast<std::size_t>(n));
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));

    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        order.clear();
        dist[static_cast<std::size_t>(s)] = 0;
        sigma[static_cast<std::size_t>(s)] = 1.0;
        order.push_back(s);
        for (std::size_t head = 0; head < order.size(); ++head) {
            int u = order[head];
            for (int w : g.neighbors(u)) {
                auto wi = static_cast<std::size_t>(w);
                auto ui = static_cast<std::size_t>(u);
                if (dist[wi] == -1) {
                    dist[wi] = dist[ui] + 1;
                    order.push_back(w);
                }
                if (dist[wi] == dist[ui] + 1) sigma[wi] += sigma[ui];
            }
        }
        for (std::size_t i = order.size(); i-- > 1;) {
            int w = order[i];
            auto wi = static_cast<std::size_t>(w);
            for (int u : g.neighbors(w)) {
                auto ui = static_cast<std::size_t>(u);
                if (dist[ui] == dist[wi] - 1)
                    delta[ui] += sigma[ui] / sigma[wi] * (1.0 + delta[wi]);
            }
            if (w != s) out.per_node[wi] += delta[wi];
        }
    }
    double sum = 0;
    for (double& b : out.per_node) {
        b /= 2.0;
        sum += b;
    }
    out.average = sum / n;
    return out;
}

MetricValue eigen_centrality(const SimpleGraph& g, const EigenOptions& opts) {
    auto components = connected_components(g);
    if (components.empty() || components.front().size() < 2)
        return MetricValue::missing(MissingReason::ComponentTooSmall);
    const std::vector<int>& comp = components.front();
    const std::size_t m = comp.size();

    std::vector<int> local(static_cast<std::size_t>(g.node_count()), -1);
    for (std::size_t i = 0; i < m; ++i) local[static_cast<std::size_t>(comp[i])] = static_cast<int>(i);

    // power iteration with the shifted operator A + I: same eigenvector, and
    // the shift makes the dominant eigenvalue strictly dominant on bipartite
    // components. Stops when the extrapolated eigenvector error drops below
    // the tolerance; the raw step change alone understates the error when the
    // spectral gap is small.
    std::vector<double> x(m, 1.0), next(m, 0.0);
    double change1 = -1.0, change2 = -1.0;  // last two step changes
    bool converged = false;
    for (int it = 0; it < opts.max_iterations && !converged; ++it) {
        for (std::size_t i = 0; i < m; ++i) {
            double acc = x[i];
            for (int w : g.neighbors(comp[i])) acc += x[static_cast<std::size_t>(local[static_cast<std::size_t>(w)])];
            next[i] = acc;
        }
        double max_entry = 0;
        for (double v : next) max_entry = std::max(max_entry, v);
        double change = 0;
        for (std::size_t i = 0; i < m; ++i) {
            next[i] /= max_entry;
            change = std::max(change, std::abs(next[i] - x[i]));
        }
        x.swap(next);
        if (change == 0.0) {
            converged = true;
            break;
        }
        if (change1 > 0 && change2 > 0) {
            double ratio = std::max(change / change1, change1 / change2);
            ratio = std::min(ratio, 0.9999);
            double projected_error = change * ratio / (1.0 - ratio);
            if (projected_error < opts.tolerance && change < opts.tolerance * 10) converged = true;
        }
        change2 = change1;
        change1 = change;
    }
    if (!converged) throw ConvergenceFailure();

    double max_entry = *std::max_element(x.begin(), x.end());
    double mean = 0;
    for (double v : x) mean += v / max_entry;
    return MetricValue::of(mean / static_cast<double>(m));
}

MetricValue assortativity(const SimpleGraph& g) {
    const int n = g.node_count();
    if (n == 0) throw EmptyGraph();
    if (g.edge_count() == 0) throw NoEdges();
    // each undirected edge contributes both (du, dv) and (dv, du); by that
    // symmetry the two endpoint samples share mean and variance
    double s1 = 0, s2 = 0, sp = 0;
    long points = 0;
    for (int u = 0; u < n; ++u) {
        double du = g.degree(u);
        for (int v : g.neighbors(u)) {
            double dv = g.degree(v);
            s1 += du;
            s2 += du * du;
            sp += du * dv;
            ++points;
        }
    }
    double mean = s1 / static_cast<double>(points);
    double var = s2 / static_cast<double>(points) - mean * mean;
    // degrees are integers, so a truly degenerate endpoint sample evaluates
    // to exactly zero here while any real variance is >= 1/points^2
    if (var <= 1e-12) return MetricValue::missing(MissingReason::ZeroDegreeVariance);
    double cov = sp / static_cast<double>(points) - mean * mean;
    return MetricValue::of(cov / var);
}

MetricValue rich_club(const SimpleGraph& g, int k) {
    if (k < 1) throw std::invalid_argument("rich_club requires k >= 1");
    const int n = g.node_count();
    std::vector<int> rich;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) > k) rich.push_back(v);
    if (rich.size() < 2) return MetricValue::missing(MissingReason::RichClubTooSmall);
    long internal_edges = 0;
    for (std::size_t i = 0; i < rich.size(); ++i)
        for (std::size_t j = i + 1; j < rich.size(); ++j)
            if (g.has_edge(rich[i], rich[j])) ++internal_edges;
    double s = static_cast<double>(rich.size());
    return MetricValue::of(2.0 * static_cast<double>(internal_edges) / (s * (s - 1.0)));
}

int default_rich_club_k(const SimpleGraph& g) {
    const int n = g.node_count();
    if (n == 0) return 1;
    double mean = 2.0 * static_cast<double>(g.edge_count()) / n;
    return std::max(1, static_cast<int>(std::floor(mean)));
}

namespace {

long pairs_of(long size) {
    return size * (size - 1) / 2;
}

// connected pairs among all nodes (components supplied) and among all nodes
// except v, with v's component given
long connected_pairs_excluding(std::span<const std::vector<int>> components, int v) {
    long total = 0;
    for (const auto& comp : components) {
        long size = static_cast<long>(comp.size());
        if (std::binary_search(comp.begin(), comp.end(), v)) size -= 1;
        total += pairs_of(size);
    }
    return total;
}

long connected_pairs_without_vertex(const SimpleGraph& g, int skip) {
    const int n = g.node_count();
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(skip)] = 1;
    std::vector<int> stack;
    long total = 0;
    for (int start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        long size = 0;
        stack.push_back(start);
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            ++size;
            for (int w : g.neighbors(u)) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        total += pairs_of(size);
    }
    return total;
}

}  // namespace

MetricValue swan_connectivity(const SimpleGraph& g, int v) {
    const int n = g.node_count();
    if (v < 0 || v >= n) throw std::out_of_range("vertex out of range");
    auto components = connected_components(g);
    long before = connected_pairs_excluding(components, v);
    if (before == 0) return MetricValue::missing(MissingReason::NoPairsAfterRemoval);
    long after = connected_pairs_without_vertex(g, v);
    return MetricValue::of(static_cast<double>(before - after) / static_cast<double>(before));
}

SwanAggregate swan_connectivity_range(const SimpleGraph& g) {
    SwanAggregate out;
    const int n = g.node_count();
    if (n < 3) {
        out.min = MetricValue::missing(MissingReason::TooFewNodes);
        out.max = MetricValue::missing(MissingReason::TooFewNodes);
        return out;
    }
    auto components = connected_components(g);
    bool any = false;
    double lo = 0, hi = 0;
    for (int v = 0; v < n; ++v) {
        long before = connected_pairs_excluding(components, v);
        if (before == 0) continue;
        long after = connected_pairs_without_vertex(g, v);
        double loss = static_cast<double>(before - after) / static_cast<double>(before);
        if (!any) {
            lo = hi = loss;
            any = true;
        } else {
            lo = std::min(lo, loss);
            hi = std::max(hi, loss);
        }
    }
    if (!any) {
        out.min = MetricValue::missing(MissingReason::NoPairsAfterRemoval);
        out.max = MetricValue::missing(MissingReason::NoPairsAfterRemoval);
    } else {
        out.min = MetricValue::of(lo);
        out.max = MetricValue::of(hi);
    }
    return out;
}

MetricReport compute_report(const SimpleGraph& g, const ReportOptions& opts) {
    MetricReport r;
    const int n = g.node_count();
    r[Metric::NumberNodes] = MetricValue::of(n);
    r[Metric::NumberEdges] = MetricValue::of(static_cast<double>(g.edge_count()));
    if (n == 0) {
        r[Metric::NumberIsolatedNodes] = MetricValue::of(0);
        for (Metric m : {Metric::PercIsolatedNodes, Metric::AvgDegreeCentrality,
                         Metric::CoefficientVariation, Metric::ClusterCoefficient,
                         Metric::AvgPathLength, Metric::NetworkDiameter,
                         Metric::AvgBetweennessCentrality, Metric::EigenCentrality,
                         Metric::AssortCoefficient, Metric::RichClubCoefficient,
                         Metric::SwanConnectivityMin, Metric::SwanConnectivityMax,
                         Metric::ResearchersPerPublication})
            r[m] = MetricValue::missing(MissingReason::EmptyGraph);
        return r;
    }

    int isolated = 0;
    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 0) ++isolated;
    r[Metric::NumberIsolatedNodes] = MetricValue::of(isolated);
    r[Metric::PercIsolatedNodes] = MetricValue::of(static_cast<double>(isolated) / n);

    DegreeStats ds = degree_stats(g);
    r[Metric::AvgDegreeCentrality] = ds.average;
    r[Metric::CoefficientVariation] = ds.coefficient_variation;

    r[Metric::ClusterCoefficient] = MetricValue::of(clustering_coefficient(g));

    PathMetrics pm = path_metrics(g);
    r[Metric::AvgPathLength] = pm.average_path_length;
    r[Metric::NetworkDiameter] = pm.diameter;

    r[Metric::AvgBetweennessCentrality] = MetricValue::of(betweenness(g).average);

    try {
        r[Metric::EigenCentrality] = eigen_centrality(g, opts.eigen);
    } catch (const ConvergenceFailure&) {
        r[Metric::EigenCentrality] = MetricValue::missing(MissingReason::NoConvergence);
    }

    if (g.edge_count() == 0) {
        r[Metric::AssortCoefficient] = MetricValue::missing(MissingReason::NoEdges);
        r[Metric::ResearchersPerPublication] = MetricValue::missing(MissingReason::NoEdges);
    } else {
        r[Metric::AssortCoefficient] = assortativity(g);
        r[Metric::ResearchersPerPublication] =
            MetricValue::of(static_cast<double>(n) / static_cast<double>(g.edge_count()));
    }

    int k = opts.rich_club_k.value_or(default_rich_club_k(g));
    r[Metric::RichClubCoefficient] = rich_club(g, std::max(1, k));

    SwanAggregate swan = swan_connectivity_range(g);
    r[Metric::SwanConnectivityMin] = swan.min;
    r[Metric::SwanConnectivityMax] = swan.max;
    return r;
}

MetricReport compute_report(const CoauthorshipGraph& g, const ReportOptions& opts) {
    return compute_report(g.structure(), opts);
}

namespace {

std::string cell_of(const MetricValue& v) {
    if (v.is_missing()) return "NA:" + missing_reason_slug(v.reason());
    return format_double(v.value());
}

MetricValue cell_from(const std::string& text) {
    if (starts_with(text, "NA:")) {
        auto reason = missing_reason_from_slug(text.substr(3));
        if (!reason) throw std::runtime_error("bad missing-reason cell: " + text);
        return MetricValue::missing(*reason);
    }
    return MetricValue::of(std::stod(text));
}

}  // namespace

std::string write_metric_table(std::span<const MetricRow> rows, std::uint64_t run_seed) {
    std::string out = strf("# seed %llu\n", static_cast<unsigned long long>(run_seed));
    std::vector<std::string> header = {"program_id", "period"};
    for (const auto& name : metric_names()) header.push_back(name);
    header.push_back("publicationCount");
    append_csv_row(out, header);
    for (const MetricRow& row : rows) {
        std::vector<std::string> fields = {row.program_id, row.period_label};
        for (int i = 0; i < kMetricCount; ++i)
            fields.push_back(cell_of(row.report.values[static_cast<std::size_t>(i)]));
        fields.push_back(std::to_string(row.publication_count));
        append_csv_row(out, fields);
    }
    return out;
}

std::vector<MetricRow> read_metric_table(std::string_view text) {
    auto rows = parse_csv(text);
    if (rows.empty()) throw std::runtime_error("empty metric table");
    const std::size_t ncols = 2 + static_cast<std::size_t>(kMetricCount) + 1;
    if (rows.front().size() != ncols) throw std::runtime_error("bad metric table header");
    std::vector<MetricRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != ncols) throw std::runtime_error("bad metric table row");
        MetricRow mr;
        mr.program_id = row[0];
        mr.period_label = row[1];
        for (int f = 0; f < kMetricCount; ++f)
            mr.report.values[static_cast<std::size_t>(f)] = cell_from(row[static_cast<std::size_t>(f) + 2]);
        mr.publication_count = std::stol(row[ncols - 1]);
        out.push_back(std::move(mr));
    }
    return out;
}

}  // namespace coanet
