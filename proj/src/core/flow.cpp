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

#include "bhplan/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace bhplan {

MaxFlow::MaxFlow(int n) : adj_(n), level_(n), it_(n) {}

int MaxFlow::add_edge(int u, int v, int cap) {
  adj_[u].push_back({v, cap, static_cast<int>(adj_[v].size())});
  adj_[v].push_back({u, 0, static_cast<int>(adj_[u].size()) - 1});
  ids_.emplace_back(u, static_cast<int>(adj_[u].size()) - 1);
  initial_cap_.push_back(cap);
  return static_cast<int>(ids_.size()) - 1;
}

int MaxFlow::flow_on(int id) const {
  const auto [u, slot] = ids_[id];
  return initial_cap_[id] - adj_[u][slot].cap;
}

int MaxFlow::run(int s, int t) {
  int flow = 0;
  while (bfs(s, t)) {
    std::fill(it_.begin(), it_.end(), 0);
    while (int f = dfs(s, t, std::numeric_limits<int>::max())) flow += f;
  }
  return flow;
}

bool MaxFlow::bfs(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const auto& e : adj_[u]) {
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[u] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[t] >= 0;
}

int MaxFlow::dfs(int u, int t, int f) {
  if (u == t) return f;
  for (int& i = it_[u]; i < static_cast<int>(adj_[u].size()); ++i) {
    Edge& e = adj_[u][i];
    if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
    if (int got = dfs(e.to, t, std::min(f, e.cap))) {
      e.cap -= got;
      adj_[e.to][e.rev].cap += got;
      return got;
    }
  }
  return 0;
}

}  // namespace bhplan
