#include "dualarm/matching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <tuple>

namespace dualarm {

TransferGraph::TransferGraph(int vertices, int objects)
    : vertices_(vertices),
      objects_(objects < 0 ? vertices : objects),
      weight_(static_cast<std::size_t>(vertices) * vertices, kAbsent),
      task_(static_cast<std::size_t>(vertices) * vertices),
      free_(static_cast<std::size_t>(vertices) * vertices, 0) {
  if (vertices < 0) throw std::invalid_argument("TransferGraph: negative vertex count");
}

void TransferGraph::set_edge(int u, int v, double w, const Omega& task, bool orientation_free) {
  if (u == v) throw std::invalid_argument("TransferGraph: self loop");
  weight_[index(u, v)] = weight_[index(v, u)] = w;
  task_[index(u, v)] = task_[index(v, u)] = task;
  free_[index(u, v)] = free_[index(v, u)] = orientation_free ? 1 : 0;
}

void TransferGraph::remove_edge(int u, int v) {
  weight_[index(u, v)] = weight_[index(v, u)] = kAbsent;
}

namespace {

// How far each arm reaches from its safe point to the middle of its object's
// transfer. Breaks ties between the two arm assignments of a pair without
// querying the oracle.
double side_score(const Instance& inst, const Omega& task) {
  double score = 0.0;
  for (int arm = 0; arm < 2; ++arm) {
    const ObjectSpec& o = inst.objects[task[arm]];
    score += distance(inst.safe[arm], 0.5 * (o.start + o.goal));
  }
  return score;
}

}  // namespace

TransferGraph build_transfer_graph(CostModel& costs, const BlockedSet* blocked) {
  const Instance& inst = costs.instance();
  const int n = inst.size();
  if (n < 1) throw std::invalid_argument("build_transfer_graph: empty instance");
  const int vertices = n % 2 == 0 ? n : n + 1;
  TransferGraph g(vertices, n);

  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const Omega forward{u, v};
      const Omega backward{v, u};
      const double wf = costs.transfer(forward).cost;
      const double wb = costs.transfer(backward).cost;
      g.evaluations += 2;
      if (blocked && (blocked->blocks(forward) || blocked->blocks(backward))) continue;
      const bool tie = wb == wf;
      if (wb < wf || (tie && side_score(inst, backward) < side_score(inst, forward))) {
        g.set_edge(u, v, wb, backward, tie);
      } else {
        g.set_edge(u, v, wf, forward, tie);
      }
    }
  }
  if (vertices > n) {
    for (int o = 0; o < n; ++o) {
      const Omega single{o, kNoAct};
      const double w = costs.transfer(single).cost;
      ++g.evaluations;
      if (blocked && blocked->blocks(single)) continue;
      g.set_edge(o, n, w, single);
    }
  }
  return g;
}

double matching_weight(const TransferGraph& g, const std::vector<std::pair<int, int>>& pairs) {
  double sum = 0.0;
  for (const auto& [u, v] : pairs) sum += g.weight(u, v);
  return sum;
}

std::vector<Omega> matching_tasks(const TransferGraph& g, const Matching& m) {
  std::vector<Omega> tasks;
  tasks.reserve(m.pairs.size());
  for (const auto& [u, v] : m.pairs) tasks.push_back(g.task(u, v));
  return tasks;
}

namespace {

// Port of the classic primal-dual blossom implementation by J. van Rantwijk.
// Vertices 0..n-1; endpoint p of edge k is endpoint[p] with k = p / 2.
class BlossomMatcher {
 public:
  BlossomMatcher(int n, const std::vector<std::tuple<int, int, std::int64_t>>& edges, bool maxcard)
      : n_(n), edges_(edges), maxcard_(maxcard) {}

  std::vector<int> run() {
    const int nedge = static_cast<int>(edges_.size());
    std::vector<int> result(n_, -1);
    if (nedge == 0) return result;

    std::int64_t maxweight = 0;
    for (const auto& e : edges_) maxweight = std::max(maxweight, std::get<2>(e));
    endpoint_.resize(2 * nedge);
    for (int p = 0; p < 2 * nedge; ++p) {
      endpoint_[p] = p % 2 == 0 ? std::get<0>(edges_[p / 2]) : std::get<1>(edges_[p / 2]);
    }
    neighbend_.assign(n_, {});
    for (int k = 0; k < nedge; ++k) {
      neighbend_[std::get<0>(edges_[k])].push_back(2 * k + 1);
      neighbend_[std::get<1>(edges_[k])].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    for (int v = 0; v < n_; ++v) inblossom_[v] = v;
    blossomparent_.assign(2 * n_, -1);
    blossomchilds_.assign(2 * n_, {});
    blossombase_.assign(2 * n_, -1);
    for (int v = 0; v < n_; ++v) blossombase_[v] = v;
    blossomendps_.assign(2 * n_, {});
    bestedge_.assign(2 * n_, -1);
    blossombestedges_.assign(2 * n_, {});
    has_bestedges_.assign(2 * n_, false);
    for (int b = 2 * n_ - 1; b >= n_; --b) unused_.push_back(b);
    std::reverse(unused_.begin(), unused_.end());
    dualvar_.assign(2 * n_, 0);
    for (int v = 0; v < n_; ++v) dualvar_[v] = maxweight;
    allowedge_.assign(nedge, false);

    for (int stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = n_; b < 2 * n_; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();
      for (int v = 0; v < n_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
      }

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            std::int64_t kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = true;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = -1;
        std::int64_t delta = 0;
        int deltaedge = -1;
        int deltablossom = -1;
        if (!maxcard_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
        }
        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const std::int64_t d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const std::int64_t d = slack(bestedge_[b]) / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
              (deltatype == -1 || dualvar_[b] < delta)) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          deltatype = 1;
          delta = std::max<std::int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
        }

        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 1) {
            dualvar_[v] -= delta;
          } else if (label_[inblossom_[v]] == 2) {
            dualvar_[v] += delta;
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) break;
        if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          auto [i, j, wt] = edges_[deltaedge];
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          queue_.push_back(std::get<0>(edges_[deltaedge]));
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;

      for (int b = n_; b < 2 * n_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }

    for (int v = 0; v < n_; ++v) {
      if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    }
    return result;
  }

 private:
  std::int64_t slack(int k) const {
    const auto& [i, j, wt] = edges_[k];
    return dualvar_[i] + dualvar_[j] - 2 * wt;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  static int wrap(int j, int len) { return ((j % len) + len) % len; }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = std::get<0>(edges_[k]);
    int w = std::get<1>(edges_[k]);
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    std::vector<int> path;
    std::vector<int> endps;
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    blossomchilds_[b] = path;
    blossomendps_[b] = endps;
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (int leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }

    std::vector<int> bestedgeto(2 * n_, -1);
    for (int sub : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bestedges_[sub]) {
        for (int leaf : leaves(sub)) {
          std::vector<int> list;
          for (int p : neighbend_[leaf]) list.push_back(p / 2);
          nblists.push_back(std::move(list));
        }
      } else {
        nblists.push_back(blossombestedges_[sub]);
      }
      for (const auto& nblist : nblists) {
        for (int e : nblist) {
          int i = std::get<0>(edges_[e]);
          int j = std::get<1>(edges_[e]);
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(e) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = e;
          }
        }
      }
      blossombestedges_[sub].clear();
      has_bestedges_[sub] = false;
      bestedge_[sub] = -1;
    }
    blossombestedges_[b].clear();
    for (int e : bestedgeto) {
      if (e != -1) blossombestedges_[b].push_back(e);
    }
    has_bestedges_[b] = true;
    bestedge_[b] = -1;
    for (int e : blossombestedges_[b]) {
      if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b])) bestedge_[b] = e;
    }
  }

  void expand_blossom(int b, bool endstage) {
    for (int s : blossomchilds_[b]) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const std::vector<int>& childs = blossomchilds_[b];
      const std::vector<int>& endps = blossomendps_[b];
      const int len = static_cast<int>(childs.size());
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endps[wrap(j - endptrick, len)] ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endps[wrap(j - endptrick, len)] / 2] = true;
        j += jstep;
        p = endps[wrap(j - endptrick, len)] ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      const int bv = childs[wrap(j, len)];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (childs[wrap(j, len)] != entrychild) {
        const int sub = childs[wrap(j, len)];
        if (label_[sub] == 1) {
          j += jstep;
          continue;
        }
        int reached = -1;
        for (int leaf : leaves(sub)) {
          if (label_[leaf] != 0) {
            reached = leaf;
            break;
          }
        }
        if (reached >= 0) {
          label_[reached] = 0;
          label_[endpoint_[mate_[blossombase_[sub]]]] = 0;
          assign_label(reached, 2, labelend_[reached]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = false;
    bestedge_[b] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    std::vector<int>& childs = blossomchilds_[b];
    std::vector<int>& endps = blossomendps_[b];
    const int len = static_cast<int>(childs.size());
    const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[wrap(j, len)];
      const int p = endps[wrap(j - endptrick, len)] ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = childs[wrap(j, len)];
      if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(int k) {
    const auto& [v, w, wt] = edges_[k];
    for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
      while (true) {
        const int bs = inblossom_[s];
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int n_;
  const std::vector<std::tuple<int, int, std::int64_t>>& edges_;
  bool maxcard_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<int> unused_;
  std::vector<std::int64_t> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<int> queue_;
};

Matching finish(const TransferGraph& g, std::vector<std::pair<int, int>> pairs) {
  Matching m;
  for (auto& [u, v] : pairs) {
    if (u > v) std::swap(u, v);
  }
  std::sort(pairs.begin(), pairs.end());
  m.perfect = 2 * static_cast<int>(pairs.size()) == g.vertex_count();
  m.pairs = std::move(pairs);
  m.weight = m.perfect ? matching_weight(g, m.pairs) : TransferGraph::kAbsent;
  return m;
}

}  // namespace

std::vector<int> max_weight_matching(int vertices,
                                     const std::vector<std::tuple<int, int, std::int64_t>>& edges,
                                     bool max_cardinality) {
  return BlossomMatcher(vertices, edges, max_cardinality).run();
}

Matching min_weight_perfect_matching(const TransferGraph& g) {
  const int n = g.vertex_count();
  if (n % 2 != 0) throw std::invalid_argument("min_weight_perfect_matching: odd vertex count");
  if (n == 0) return finish(g, {});

  double wmax = 0.0;
  double wmin = TransferGraph::kAbsent;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) continue;
      wmax = std::max(wmax, g.weight(u, v));
      wmin = std::min(wmin, g.weight(u, v));
    }
  }
  if (wmin == TransferGraph::kAbsent) return finish(g, {});
  if (!std::isfinite(wmax) || wmin < 0.0) {
    throw std::invalid_argument("min_weight_perfect_matching: weights must be finite and non-negative");
  }

  // Integer weights keep the dual updates exact. The transform turns the
  // minimum into a maximum; maximum cardinality forces a perfect matching
  // whenever one exists.
  const double scale = wmax > 0.0 ? static_cast<double>(std::int64_t{1} << 40) / wmax : 1.0;
  const std::int64_t top = static_cast<std::int64_t>(std::llround(wmax * scale)) + 1;
  std::vector<std::tuple<int, int, std::int64_t>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) continue;
      const std::int64_t w = std::llround(g.weight(u, v) * scale);
      edges.emplace_back(u, v, 2 * (top - w));
    }
  }
  const std::vector<int> mate = max_weight_matching(n, edges, true);
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < n; ++v) {
    if (mate[v] > v) pairs.emplace_back(v, mate[v]);
  }
  return finish(g, std::move(pairs));
}

Matching matching_bruteforce_oracle(const TransferGraph& g, std::uint64_t* enumerated) {
  const int n = g.vertex_count();
  if (n > kBruteforceMatchingCap) {
    throw std::invalid_argument("matching_bruteforce_oracle: more than " +
                                std::to_string(kBruteforceMatchingCap) + " vertices");
  }
  if (n % 2 != 0) throw std::invalid_argument("matching_bruteforce_oracle: odd vertex count");

  std::vector<std::pair<int, int>> current;
  std::vector<std::pair<int, int>> best;
  double best_weight = TransferGraph::kAbsent;
  std::uint64_t count = 0;
  std::vector<char> used(n, 0);

  std::function<void()> recurse = [&]() {
    int u = 0;
    while (u < n && used[u]) ++u;
    if (u == n) {
      ++count;
      const double w = matching_weight(g, current);
      if (w < best_weight) {
        best_weight = w;
        best = current;
      }
      return;
    }
    used[u] = 1;
    for (int v = u + 1; v < n; ++v) {
      if (used[v] || !g.has_edge(u, v)) continue;
      used[v] = 1;
      current.emplace_back(u, v);
      recurse();
      current.pop_back();
      used[v] = 0;
    }
    used[u] = 0;
  };
  recurse();
  if (enumerated) *enumerated = count;
  if (n > 0 && best.empty()) return finish(g, {});
  return finish(g, std::move(best));
}

Matching matching_subset_dp(const TransferGraph& g) {
  const int n = g.vertex_count();
  if (n > kSubsetMatchingCap) {
    throw std::invalid_argument("matching_subset_dp: more than " + std::to_string(kSubsetMatchingCap) +
                                " vertices");
  }
  if (n % 2 != 0) throw std::invalid_argument("matching_subset_dp: odd vertex count");

  // best[mask]: cheapest perfect matching of the vertices in mask, always
  // pairing the lowest vertex of the mask first.
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<double> best(std::size_t{full} + 1, TransferGraph::kAbsent);
  std::vector<int> partner(std::size_t{full} + 1, -1);
  best[0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const int u = std::countr_zero(mask);
    for (std::uint32_t rest = mask & (mask - 1); rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (!g.has_edge(u, v)) continue;
      const std::uint32_t sub = mask & ~(std::uint32_t{1} << u) & ~(std::uint32_t{1} << v);
      const double w = g.weight(u, v) + best[sub];
      if (w < best[mask]) {
        best[mask] = w;
        partner[mask] = v;
      }
    }
  }
  if (n > 0 && partner[full] < 0) return finish(g, {});
  std::vector<std::pair<int, int>> pairs;
  for (std::uint32_t mask = full; mask;) {
    const int u = std::countr_zero(mask);
    const int v = partner[mask];
    pairs.emplace_back(u, v);
    mask &= ~(std::uint32_t{1} << u) & ~(std::uint32_t{1} << v);
  }
  return finish(g, std::move(pairs));
}

}  // namespace dualarm
