// Copyright 2026 The bhplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BHPLAN_FLOW_HPP_
#define BHPLAN_FLOW_HPP_

#include <vector>

namespace bhplan {

// Dinic max-flow on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  // Returns an edge id usable with flow_on().
  int add_edge(int from, int to, int capacity);
  int run(int source, int sink);
  int flow_on(int edge_id) const;

 private:
  struct Edge {
    int to;
    int cap;
    int rev;
  };

  bool bfs(int s, int t);
  int dfs(int u, int t, int f);

  std::vector<std::vector<Edge>> adj_;
  std::vector<std::pair<int, int>> ids_;  // edge id -> (node, slot)
  std::vector<int> initial_cap_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace bhplan

#endif  // BHPLAN_FLOW_HPP_
