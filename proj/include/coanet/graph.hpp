#pragma once

#include <span>
#include <string>
#include <vector>

#include "coanet/types.hpp"

namespace coanet {

// Undirected simple graph over nodes 0..n-1: sorted unique adjacency, no
// self-loops. reset() keeps allocated capacity so tight loops can reuse one
// instance.
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(int n) { reset(n); }

    void reset(int n);
    void add_edge(int u, int v);
    void finalize();  // sort + dedupe adjacency; call after the last add_edge

    int node_count() const { return n_; }
    long edge_count() const { return edge_count_; }
    std::span<const int> neighbors(int u) const { return adj_[static_cast<std::size_t>(u)]; }
    int degree(int u) const { return static_cast<int>(adj_[static_cast<std::size_t>(u)].size()); }
    bool has_edge(int u, int v) const;

private:
    int n_ = 0;
    long edge_count_ = 0;
    bool finalized_ = true;
    std::vector<std::vector<int>> adj_;
};

// Partition into maximal connected node sets, largest first; ties broken by
// smallest member. Members ascend within each component.
std::vector<std::vector<int>> connected_components(const SimpleGraph& g);

struct GraphNode {
    std::string id;
    std::string name;
};

struct GraphEdge {
    int u = 0;  // indices into nodes, u < v
    int v = 0;
    int weight = 1;  // distinct joint publications
};

struct CoauthorshipGraph {
    std::string program_id;
    EvaluationPeriod period;
    std::vector<GraphNode> nodes;  // sorted by id
    std::vector<GraphEdge> edges;  // sorted by (u, v)
    long publication_count = 0;    // deduplicated publications with >= 1 internal author

    SimpleGraph structure() const;
};

std::vector<std::vector<std::string>> connected_components(const CoauthorshipGraph& g);

// Diagnostics produced while building a graph; an unmatched roster researcher
// still becomes a node.
struct BuildIssues {
    std::vector<std::string> unmatched_roster_names;
    int ambiguous_roster_names = 0;
    int ambiguous_author_slots = 0;
    int merged_duplicate_publications = 0;
};

// Roster researcher resolved against the resume corpus. resume stays null
// when no record matches (or several match without a unique exact form);
// node_id is then a stable placeholder derived from the name.
struct RosterMatch {
    std::string roster_name;
    std::string node_id;
    const ResumeRecord* resume = nullptr;
};
std::vector<RosterMatch> match_roster(const ProgramRoster& roster,
                                      std::span<const ResumeRecord> resumes,
                                      BuildIssues* issues = nullptr);

// One node per roster researcher; for every deduplicated publication in the
// period, each unordered pair of distinct internal authors gains weight 1.
// Publications are deduplicated across resumes by (normalized title, year).
CoauthorshipGraph build_graph(const ProgramRoster& roster, std::span<const ResumeRecord> resumes,
                              const EvaluationPeriod& period, BuildIssues* issues = nullptr);

std::string write_graph_file(const CoauthorshipGraph& g, std::uint64_t run_seed);
CoauthorshipGraph read_graph_file(std::string_view text);

}  // namespace coanet
