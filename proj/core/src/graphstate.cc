// Copyright 2026 The optorep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "optorep/graphstate.h"

#include <iterator>
#include <sstream>

#include "optorep/errors.h"

namespace optorep {

namespace {

void require(const SimpleGraph &g, int v) {
    if (!g.contains(v)) {
        throw ConfigError("vertex", "vertex " + std::to_string(v) + " is not in the graph");
    }
}

}  // namespace

SimpleGraph::SimpleGraph(std::initializer_list<std::pair<int, int>> edges) {
    for (auto [a, b] : edges) {
        add_edge(a, b);
    }
}

void SimpleGraph::add_vertex(int v) {
    adj_[v];
}

void SimpleGraph::add_edge(int a, int b) {
    if (a == b) {
        throw ConfigError("edge", "self-loop on vertex " + std::to_string(a));
    }
    adj_[a].insert(b);
    adj_[b].insert(a);
}

void SimpleGraph::remove_edge(int a, int b) {
    auto ia = adj_.find(a);
    auto ib = adj_.find(b);
    if (ia != adj_.end()) {
        ia->second.erase(b);
    }
    if (ib != adj_.end()) {
        ib->second.erase(a);
    }
}

void SimpleGraph::toggle_edge(int a, int b) {
    if (has_edge(a, b)) {
        remove_edge(a, b);
    } else {
        add_edge(a, b);
    }
}

void SimpleGraph::remove_vertex(int v) {
    require(*this, v);
    for (int u : adj_[v]) {
        adj_[u].erase(v);
    }
    adj_.erase(v);
}

bool SimpleGraph::contains(int v) const {
    return adj_.count(v) != 0;
}

bool SimpleGraph::has_edge(int a, int b) const {
    auto it = adj_.find(a);
    return it != adj_.end() && it->second.count(b) != 0;
}

const std::set<int> &SimpleGraph::neighbors(int v) const {
    require(*this, v);
    return adj_.at(v);
}

std::vector<int> SimpleGraph::vertices() const {
    std::vector<int> out;
    for (const auto &[v, _] : adj_) {
        out.push_back(v);
    }
    return out;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto &[v, ns] : adj_) {
        for (int u : ns) {
            if (v < u) {
                out.emplace_back(v, u);
            }
        }
    }
    return out;
}

size_t SimpleGraph::edge_count() const {
    size_t twice = 0;
    for (const auto &[v, ns] : adj_) {
        twice += ns.size();
    }
    return twice / 2;
}

SimpleGraph SimpleGraph::induced(const std::set<int> &keep) const {
    SimpleGraph out;
    for (int v : keep) {
        if (contains(v)) {
            out.add_vertex(v);
        }
    }
    for (auto [a, b] : edges()) {
        if (keep.count(a) && keep.count(b)) {
            out.add_edge(a, b);
        }
    }
    return out;
}

std::string SimpleGraph::str() const {
    std::ostringstream os;
    os << "V={";
    bool first = true;
    for (int v : vertices()) {
        os << (first ? "" : ",") << v;
        first = false;
    }
    os << "} E={";
    first = true;
    for (auto [a, b] : edges()) {
        os << (first ? "" : ",") << a << "-" << b;
        first = false;
    }
    os << "}";
    return os.str();
}

SimpleGraph star_graph(int center, const std::vector<int> &leaves) {
    SimpleGraph g;
    g.add_vertex(center);
    for (int leaf : leaves) {
        g.add_edge(center, leaf);
    }
    return g;
}

int attach_tree(SimpleGraph &g, int anchor, const std::vector<int> &branches, int first_label) {
    require(g, anchor);
    int next = first_label;
    auto fresh = [&] {
        if (g.contains(next)) {
            throw ConfigError("vertex", "label " + std::to_string(next) + " already in use");
        }
        g.add_vertex(next);
        return next++;
    };
    const int root = fresh();
    g.add_edge(anchor, root);
    std::vector<int> level{root};
    for (int width : branches) {
        if (width < 1) {
            throw ConfigError("b", "branching entries must be >= 1");
        }
        std::vector<int> below;
        for (int parent : level) {
            for (int c = 0; c < width; c++) {
                int child = fresh();
                g.add_edge(parent, child);
                below.push_back(child);
            }
        }
        level = std::move(below);
    }
    return root;
}

bool is_clique(const SimpleGraph &g, const std::set<int> &group) {
    for (auto a = group.begin(); a != group.end(); ++a) {
        for (auto b = std::next(a); b != group.end(); ++b) {
            if (!g.has_edge(*a, *b)) {
                return false;
            }
        }
    }
    return true;
}

bool joins_completely(const SimpleGraph &g, const std::set<int> &a, const std::set<int> &b) {
    for (int u : a) {
        for (int v : b) {
            if (!g.has_edge(u, v)) {
                return false;
            }
        }
    }
    return true;
}

SimpleGraph local_complement(const SimpleGraph &g, int v) {
    const std::vector<int> ns(g.neighbors(v).begin(), g.neighbors(v).end());
    SimpleGraph out = g;
    for (size_t i = 0; i < ns.size(); i++) {
        for (size_t j = i + 1; j < ns.size(); j++) {
            out.toggle_edge(ns[i], ns[j]);
        }
    }
    return out;
}

const char *basis_name(PauliBasis b) {
    switch (b) {
        case PauliBasis::X:
            return "X";
        case PauliBasis::Y:
            return "Y";
        case PauliBasis::Z:
            return "Z";
    }
    return "?";
}

SimpleGraph measure_graph(const SimpleGraph &g, int v, PauliBasis basis,
                          std::optional<int> special_neighbor) {
    require(g, v);
    SimpleGraph out;
    switch (basis) {
        case PauliBasis::Z:
            out = g;
            out.remove_vertex(v);
            return out;
        case PauliBasis::Y:
            out = local_complement(g, v);
            out.remove_vertex(v);
            return out;
        case PauliBasis::X: {
            const auto &ns = g.neighbors(v);
            if (ns.empty()) {
                out = g;
                out.remove_vertex(v);
                return out;
            }
            int b0 = special_neighbor.value_or(*ns.begin());
            if (!ns.count(b0)) {
                throw ConfigError("special-neighbor", std::to_string(b0) +
                                                          " is not a neighbour of " +
                                                          std::to_string(v));
            }
            out = local_complement(g, b0);
            out = local_complement(out, v);
            out.remove_vertex(v);
            return local_complement(out, b0);
        }
    }
    return out;
}

}  // namespace optorep
