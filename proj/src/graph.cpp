#include "coanet/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "coanet/ingest.hpp"
#include "coanet/names.hpp"
#include "coanet/util.hpp"

namespace coanet {

void SimpleGraph::reset(int n) {
    if (n < 0) throw std::invalid_argument("negative node count");
    n_ = n;
    edge_count_ = 0;
    finalized_ = true;
    if (static_cast<int>(adj_.size()) < n) adj_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) adj_[static_cast<std::size_t>(i)].clear();
}

void SimpleGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("edge endpoint out of range");
    if (u == v) return;  // self-loops never materialize
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
    finalized_ = false;
}

void SimpleGraph::finalize() {
    edge_count_ = 0;
    for (int i = 0; i < n_; ++i) {
        auto& nbrs = adj_[static_cast<std::size_t>(i)];
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        edge_count_ += static_cast<long>(nbrs.size());
    }
    edge_count_ /= 2;
    finalized_ = true;
}

bool SimpleGraph::has_edge(int u, int v) const {
    const auto& nbrs = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::vector<int>> connected_components(const SimpleGraph& g) {
    const int n = g.node_count();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> components;
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (comp[static_cast<std::size_t>(start)] != -1) continue;
        int id = static_cast<int>(components.size());
        components.emplace_back();
        stack.push_back(start);
        comp[static_cast<std::size_t>(start)] = id;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            components[static_cast<std::size_t>(id)].push_back(u);
            for (int v : g.neighbors(u)) {
                if (comp[static_cast<std::size_t>(v)] == -1) {
                    comp[static_cast<std::size_t>(v)] = id;
                    stack.push_back(v);
                }
            }
        }
        std::sort(components.back().begin(), components.back().end());
    }
    std::stable_sort(components.begin(), components.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return components;
}

SimpleGraph CoauthorshipGraph::structure() const {
    SimpleGraph g(static_cast<int>(nodes.size()));
    for (const GraphEdge& e : edges) g.add_edge(e.u, e.v);
    g.finalize();
    return g;
}

std::vector<std::vector<std::string>> connected_components(const CoauthorshipGraph& g) {
    std::vector<std::vector<std::string>> out;
    for (const auto& comp : connected_components(g.structure())) {
        std::vector<std::string> ids;
        ids.reserve(comp.size());
        for (int idx : comp) ids.push_back(g.nodes[static_cast<std::size_t>(idx)].id);
        out.push_back(std::move(ids));
    }
    return out;
}

namespace {

std::string pseudo_id_for(const std::string& name) {
    std::string norm = normalize_name(name);
    for (char& c : norm)
        if (c == ' ') c = '_';
    return "unmatched:" + norm;
}

struct PendingPublication {
    std::vector<std::string> authors;
};

}  // namespace

std::vector<RosterMatch> match_roster(const ProgramRoster& roster,
                                      std::span<const ResumeRecord> resumes, BuildIssues* issues) {
    BuildIssues local;
    BuildIssues& is = issues ? *issues : local;

    // exact normalized match first; the edit-distance rule as fallback
    std::unordered_map<std::string, std::vector<std::size_t>> exact;
    for (std::size_t i = 0; i < resumes.size(); ++i)
        exact[normalize_name(resumes[i].full_name)].push_back(i);

    std::vector<RosterMatch> members;
    std::set<std::string> used_ids;
    for (const std::string& roster_name : roster.researcher_names) {
        RosterMatch member;
        member.roster_name = roster_name;
        std::string norm = normalize_name(roster_name);
        std::vector<std::size_t> candidates;
        if (auto it = exact.find(norm); it != exact.end()) candidates = it->second;
        if (candidates.empty()) {
            for (std::size_t i = 0; i < resumes.size(); ++i)
                if (levenshtein_capped(norm, normalize_name(resumes[i].full_name), 2) <= 2)
                    candidates.push_back(i);
        }
        if (candidates.size() == 1) {
            member.resume = &resumes[candidates.front()];
            member.node_id = member.resume->researcher_id;
        } else {
            if (candidates.empty()) {
                is.unmatched_roster_names.push_back(roster_name);
            } else {
                ++is.ambiguous_roster_names;  // conservatively treated as unmatched
            }
            std::string id = pseudo_id_for(roster_name);
            while (used_ids.count(id)) id += "_";
            member.node_id = id;
        }
        used_ids.insert(member.node_id);
        members.push_back(std::move(member));
    }
    return members;
}

CoauthorshipGraph build_graph(const ProgramRoster& roster, std::span<const ResumeRecord> resumes,
                              const EvaluationPeriod& period, BuildIssues* issues) {
    BuildIssues local;
    BuildIssues& is = issues ? *issues : local;
    std::vector<RosterMatch> members = match_roster(roster, resumes, &is);

    // collect the period's publications across all matched resumes, dedup by
    // (normalized title, year); on author-list conflicts the smaller list wins
    // so the result is independent of resume input order
    std::map<std::pair<std::string, int>, PendingPublication> unique_pubs;
    for (const RosterMatch& member : members) {
        if (!member.resume) continue;
        for (const Publication& pub : filter_publications(member.resume->publications, period)) {
            std::pair<std::string, int> key{normalize_name(pub.title), pub.year};
            auto [it, inserted] = unique_pubs.emplace(key, PendingPublication{pub.authors});
            if (!inserted && it->second.authors != pub.authors) {
                ++is.merged_duplicate_publications;
                if (pub.authors.size() < it->second.authors.size() ||
                    (pub.authors.size() == it->second.authors.size() && pub.authors < it->second.authors))
                    it->second.authors = pub.authors;
            }
        }
    }

    // nodes sorted by id; edges from clique expansion of internal authors
    CoauthorshipGraph graph;
    graph.program_id = roster.program_id;
    graph.period = period;
    std::vector<std::pair<std::string, std::string>> id_name_pairs;
    for (const RosterMatch& m : members) id_name_pairs.emplace_back(m.node_id, m.roster_name);
    std::sort(id_name_pairs.begin(), id_name_pairs.end());
    std::map<std::string, int> node_index;
    for (const auto& [id, name] : id_name_pairs) {
        node_index.emplace(id, static_cast<int>(graph.nodes.size()));
        graph.nodes.push_back({id, name});
    }

    std::vector<std::pair<std::string, std::string>> resolver_roster;
    for (const RosterMatch& m : members)
        if (m.resume) resolver_roster.emplace_back(m.node_id, m.roster_name);
    AuthorResolver resolver(resolver_roster);

    std::map<std::pair<int, int>, int> weights;
    for (const auto& [key, pub] : unique_pubs) {
        std::set<int> internal;
        for (const std::string& author : pub.authors) {
            const AuthorRef& ref = resolver.resolve(author);
            if (ref.kind == AuthorRef::Kind::Internal) {
                internal.insert(node_index.at(ref.researcher_id));
            } else if (ref.kind == AuthorRef::Kind::Ambiguous) {
                ++is.ambiguous_author_slots;  // contributes no edges
            }
        }
        if (internal.empty()) continue;
        ++graph.publication_count;
        for (auto a = internal.begin(); a != internal.end(); ++a)
            for (auto b = std::next(a); b != internal.end(); ++b) ++weights[{*a, *b}];
    }
    for (const auto& [pair, weight] : weights)
        graph.edges.push_back({pair.first, pair.second, weight});
    return graph;
}

std::string write_graph_file(const CoauthorshipGraph& g, std::uint64_t run_seed) {
    std::string out;
    out += "# coanet graph v1\n";
    out += strf("# seed %llu\n", static_cast<unsigned long long>(run_seed));
    out += "program " + g.program_id + "\n";
    out += strf("period %s %d %d\n", g.period.label.c_str(), g.period.start_year, g.period.end_year);
    out += strf("publications %ld\n", g.publication_count);
    out += strf("nodes %zu\n", g.nodes.size());
    for (const GraphNode& node : g.nodes) out += "node " + node.id + " " + node.name + "\n";
    out += strf("edges %zu\n", g.edges.size());
    for (const GraphEdge& e : g.edges)
        out += strf("edge %s %s %d\n", g.nodes[static_cast<std::size_t>(e.u)].id.c_str(),
                    g.nodes[static_cast<std::size_t>(e.v)].id.c_str(), e.weight);
    return out;
}

CoauthorshipGraph read_graph_file(std::string_view text) {
    CoauthorshipGraph g;
    std::map<std::string, int> index;
    std::istringstream in{std::string(text)};
    std::string line;
    auto fail = [](const std::string& why) -> void { throw std::runtime_error("graph file: " + why); };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "program") {
            ls >> g.program_id;
        } else if (tag == "period") {
            ls >> g.period.label >> g.period.start_year >> g.period.end_year;
        } else if (tag == "publications") {
            ls >> g.publication_count;
        } else if (tag == "nodes" || tag == "edges") {
            // counts are advisory; entries are read individually
        } else if (tag == "node") {
            GraphNode node;
            ls >> node.id;
            std::getline(ls, node.name);
            node.name = trim(node.name);
            if (node.id.empty()) fail("node without id");
            index.emplace(node.id, static_cast<int>(g.nodes.size()));
            g.nodes.push_back(std::move(node));
        } else if (tag == "edge") {
            std::string a, b;
            int w = 0;
            ls >> a >> b >> w;
            auto ia = index.find(a), ib = index.find(b);
            if (ia == index.end() || ib == index.end()) fail("edge references unknown node");
            if (w < 1) fail("edge weight must be positive");
            int u = ia->second, v = ib->second;
            if (u == v) fail("self-loop");
            if (u > v) std::swap(u, v);
            g.edges.push_back({u, v, w});
        } else {
            fail("unknown line tag '" + tag + "'");
        }
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const GraphEdge& a, const GraphEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    return g;
}

}  // namespace coanet
