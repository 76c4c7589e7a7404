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

#ifndef OPTOREP_GRAPHSTATE_H
#define OPTOREP_GRAPHSTATE_H

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace optorep {

/// Undirected simple graph on integer labels. Vertices may be isolated.
class SimpleGraph {
   public:
    SimpleGraph() = default;
    SimpleGraph(std::initializer_list<std::pair<int, int>> edges);

    void add_vertex(int v);
    /// Throws ConfigError on a self-loop. Adding an existing edge is a no-op.
    void add_edge(int a, int b);
    void remove_edge(int a, int b);
    void toggle_edge(int a, int b);
    /// Throws ConfigError("vertex") when v is absent.
    void remove_vertex(int v);

    bool contains(int v) const;
    bool has_edge(int a, int b) const;
    /// Throws ConfigError("vertex") when v is absent.
    const std::set<int> &neighbors(int v) const;
    std::vector<int> vertices() const;
    /// Sorted (low, high) pairs.
    std::vector<std::pair<int, int>> edges() const;
    size_t vertex_count() const {
        return adj_.size();
    }
    size_t edge_count() const;

    /// The graph induced on `keep`.
    SimpleGraph induced(const std::set<int> &keep) const;
    std::string str() const;

    bool operator==(const SimpleGraph &) const = default;

   private:
    std::map<int, std::set<int>> adj_;
};

/// Star with `center` joined to every leaf.
SimpleGraph star_graph(int center, const std::vector<int> &leaves);

/// Hangs a regular tree below `anchor`: the root gets branches[0] children, each of those
/// branches[1], and so on. New labels are consecutive from first_label; returns the root label.
int attach_tree(SimpleGraph &g, int anchor, const std::vector<int> &branches, int first_label);

/// Every pair in `group` adjacent.
bool is_clique(const SimpleGraph &g, const std::set<int> &group);

/// Every vertex of `a` adjacent to every vertex of `b`.
bool joins_completely(const SimpleGraph &g, const std::set<int> &a, const std::set<int> &b);

/// Toggles every edge among the neighbours of v.
SimpleGraph local_complement(const SimpleGraph &g, int v);

enum class PauliBasis { X, Y, Z };

const char *basis_name(PauliBasis b);

/// Graph after measuring v, up to local Clifford corrections. Z deletes v; Y complements at v and
/// deletes it; X complements at the special neighbour, applies the Y rule at v, and complements at
/// the special neighbour again. The special neighbour defaults to the lowest-labelled neighbour;
/// an X measurement of an isolated vertex just deletes it.
SimpleGraph measure_graph(const SimpleGraph &g, int v, PauliBasis basis,
                          std::optional<int> special_neighbor = std::nullopt);

}  // namespace optorep

#endif
