#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "coanet/graph.hpp"

namespace coanet {

struct EmptyGraph : std::invalid_argument {
    EmptyGraph() : std::invalid_argument("graph has no nodes") {}
};
struct NoEdges : std::invalid_argument {
    NoEdges() : std::invalid_argument("graph has no edges") {}
};
struct ConvergenceFailure : std::runtime_error {
    ConvergenceFailure() : std::runtime_error("power iteration hit the iteration cap") {}
};

enum class MissingReason : std::uint8_t {
    None,
    EmptyGraph,
    NoEdges,
    ZeroMeanDegree,
    ZeroDegreeVariance,
    NoConnectedPairs,
    RichClubTooSmall,
    ComponentTooSmall,
    TooFewNodes,
    NoPairsAfterRemoval,
    NoConvergence,
};

std::string missing_reason_slug(MissingReason r);
std::optional<MissingReason> missing_reason_from_slug(std::string_view slug);

// A measurement value that is either present or missing-with-a-reason.
class MetricValue {
public:
    MetricValue() : present_(false), reason_(MissingReason::EmptyGraph), value_(0) {}

    static MetricValue of(double v) {
        MetricValue m;
        m.present_ = true;
        m.reason_ = MissingReason::None;
        m.value_ = v;
        return m;
    }
    static MetricValue missing(MissingReason r) {
        MetricValue m;
        m.present_ = false;
        m.reason_ = r;
        return m;
    }

    bool is_missing() const { return !present_; }
    MissingReason reason() const { return reason_; }
    double value() const {
        if (!present_) throw std::logic_error("value() on missing measurement");
        return value_;
    }
    double value_or(double fallback) const { return present_ ? value_ : fallback; }

private:
    bool present_;
    MissingReason reason_;
    double value_;
};

// Field order here is the exported column order and the feature schema.
enum class Metric : int {
    NumberNodes = 0,
    NumberEdges,
    NumberIsolatedNodes,
    PercIsolatedNodes,
    AvgDegreeCentrality,
    CoefficientVariation,
    ClusterCoefficient,
    AvgPathLength,
    NetworkDiameter,
    AvgBetweennessCentrality,
    EigenCentrality,
    AssortCoefficient,
    RichClubCoefficient,
    SwanConnectivityMin,
    SwanConnectivityMax,
    ResearchersPerPublication,
};
inline constexpr int kMetricCount = 16;

std::span<const std::string> metric_names();
const std::string& metric_name(Metric m);

struct MetricReport {
    std::array<MetricValue, kMetricCount> values;

    MetricValue& operator[](Metric m) { return values[static_cast<std::size_t>(m)]; }
    const MetricValue& operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }
};

struct DegreeStats {
    MetricValue average;                // mean degree
    MetricValue coefficient_variation;  // population std of degrees / mean
};
DegreeStats degree_stats(const SimpleGraph& g);

// Mean local clustering; nodes of degree < 2 contribute 0.
double clustering_coefficient(const SimpleGraph& g);

struct PathMetrics {
    MetricValue average_path_length;  // over connected unordered pairs only
    MetricValue diameter;
};
PathMetrics path_metrics(const SimpleGraph& g);

struct BetweennessResult {
    std::vector<double> per_node;  // unnormalized, unordered-pair convention
    double average = 0.0;
};
BetweennessResult betweenness(const SimpleGraph& g);

struct EigenOptions {
    double tolerance = 1e-10;
    int max_iterations = 10000;
};
// Principal-eigenvector centrality of the largest connected component,
// max-scaled to 1; reported as the mean entry over that component. Missing
// when the largest component has fewer than 2 nodes. Throws
// ConvergenceFailure at the iteration cap.
MetricValue eigen_centrality(const SimpleGraph& g, const EigenOptions& opts = {});

// Pearson correlation of degrees over edge endpoints (both orientations).
MetricValue assortativity(const SimpleGraph& g);

// Density of the subgraph induced by nodes of degree > k. Missing when fewer
// than 2 such nodes exist.
MetricValue rich_club(const SimpleGraph& g, int k);
// k used by compute_report: floor(mean degree), clamped to >= 1.
int default_rich_club_k(const SimpleGraph& g);

// Fraction of connected pairs among the other nodes that disconnect when v is
// removed. Missing when no pair is connected to begin with.
MetricValue swan_connectivity(const SimpleGraph& g, int v);
struct SwanAggregate {
    MetricValue min;
    MetricValue max;
};
SwanAggregate swan_connectivity_range(const SimpleGraph& g);

struct ReportOptions {
    std::optional<int> rich_club_k;  // default: floor(mean degree), min 1
    EigenOptions eigen;
};
MetricReport compute_report(const SimpleGraph& g, const ReportOptions& opts = {});
MetricReport compute_report(const CoauthorshipGraph& g, const ReportOptions& opts = {});

// Metric table: one row per (program, period), columns = metric_names() plus
// a trailing auxiliary publicationCount column.
struct MetricRow {
    std::string program_id;
    std::string period_label;
    MetricReport report;
    long publication_count = 0;
};
std::string write_metric_table(std::span<const MetricRow> rows, std::uint64_t run_seed);
std::vector<MetricRow> read_metric_table(std::string_view text);

}  // namespace coanet
