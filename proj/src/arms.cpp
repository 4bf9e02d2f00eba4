#include "perco/arms.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace perco {

const char* sigma_class_name(SigmaClass s) {
  switch (s) {
    case SigmaClass::Mono: return "mono";
    case SigmaClass::PolyOneWhite: return "poly_one_white";
    case SigmaClass::OneBlack: return "one_black";
    case SigmaClass::OneWhite: return "one_white";
  }
  return "?";
}

void ArmQuery::validate() const {
  if (j < 1) throw std::invalid_argument("ArmQuery: j must be >= 1");
  if (sigma == SigmaClass::PolyOneWhite && j < 2)
    throw std::invalid_argument("ArmQuery: PolyOneWhite needs j >= 2");
  if ((sigma == SigmaClass::OneBlack || sigma == SigmaClass::OneWhite) && j != 1)
    throw std::invalid_argument("ArmQuery: single-arm classes need j = 1");
  if (n >= N) throw std::invalid_argument("ArmQuery: need n < N");
  if (n < min_inner_radius(j)) throw std::invalid_argument("ArmQuery: n below min_inner_radius(j)");
}

ArmDetector::ArmDetector(const Annulus& a) : a_(a) {
  std::size_t m = static_cast<std::size_t>(a.size());
  stamp_a_.assign(m, 0);
  stamp_b_.assign(m, 0);
  core_pos_.assign(m, -1);
}

bool ArmDetector::has_one_arm(const SiteConfig& c, std::uint8_t color) {
  ++epoch_;
  queue_.clear();
  for (std::int32_t s : a_.inner_boundary()) {
    if (c.colors[static_cast<std::size_t>(s)] != color) continue;
    if (a_.is_outer_boundary(s)) return true;
    stamp_a_[static_cast<std::size_t>(s)] = epoch_;
    queue_.push_back(s);
  }
  for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
    int u = queue_[qi];
    for (const std::int32_t* p = a_.neighbors_begin(u); p != a_.neighbors_end(u); ++p) {
      int v = *p;
      if (stamp_a_[static_cast<std::size_t>(v)] == epoch_) continue;
      if (c.colors[static_cast<std::size_t>(v)] != color) continue;
      if (a_.is_outer_boundary(v)) return true;
      stamp_a_[static_cast<std::size_t>(v)] = epoch_;
      queue_.push_back(v);
    }
  }
  return false;
}

// Marks (in stamp_a_/stamp_b_) sites of `color` reachable from the inner and
// outer boundary respectively and collects their intersection into core_.
// Returns false when the core is empty.
bool ArmDetector::bireachable_core(const SiteConfig& c, std::uint8_t color) {
  ++epoch_;
  queue_.clear();
  for (std::int32_t s : a_.inner_boundary()) {
    if (c.colors[static_cast<std::size_t>(s)] != color) continue;
    stamp_a_[static_cast<std::size_t>(s)] = epoch_;
    queue_.push_back(s);
  }
  for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
    int u = queue_[qi];
    for (const std::int32_t* p = a_.neighbors_begin(u); p != a_.neighbors_end(u); ++p) {
      int v = *p;
      if (stamp_a_[static_cast<std::size_t>(v)] == epoch_) continue;
      if (c.colors[static_cast<std::size_t>(v)] != color) continue;
      stamp_a_[static_cast<std::size_t>(v)] = epoch_;
      queue_.push_back(v);
    }
  }
  queue_.clear();
  core_.clear();
  for (std::int32_t s : a_.outer_boundary()) {
    if (c.colors[static_cast<std::size_t>(s)] != color) continue;
    if (stamp_b_[static_cast<std::size_t>(s)] == epoch_) continue;
    stamp_b_[static_cast<std::size_t>(s)] = epoch_;
    queue_.push_back(s);
  }
  for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
    int u = queue_[qi];
    if (stamp_a_[static_cast<std::size_t>(u)] == epoch_) core_.push_back(u);
    for (const std::int32_t* p = a_.neighbors_begin(u); p != a_.neighbors_end(u); ++p) {
      int v = *p;
      if (stamp_b_[static_cast<std::size_t>(v)] == epoch_) continue;
      if (c.colors[static_cast<std::size_t>(v)] != color) continue;
      stamp_b_[static_cast<std::size_t>(v)] = epoch_;
      queue_.push_back(v);
    }
  }
  return !core_.empty();
}

void ArmDetector::add_arc(int u, int v, int cap) {
  int id = static_cast<int>(to_.size());
  to_.push_back(v);
  cap_.push_back(static_cast<std::int8_t>(cap));
  nxt_.push_back(head_[static_cast<std::size_t>(u)]);
  head_[static_cast<std::size_t>(u)] = id;
  to_.push_back(u);
  cap_.push_back(0);
  nxt_.push_back(head_[static_cast<std::size_t>(v)]);
  head_[static_cast<std::size_t>(v)] = id + 1;
}

int ArmDetector::max_disjoint_arms(const SiteConfig& c, std::uint8_t color, int limit,
                                   ArmWitness* witness) {
  if (witness) {
    witness->paths.clear();
    witness->colors.clear();
  }
  if (limit <= 0) return 0;
  if (!bireachable_core(c, color)) return 0;

  int K = static_cast<int>(core_.size());
  int source = 2 * K, sink = 2 * K + 1;
  head_.assign(static_cast<std::size_t>(2 * K + 2), -1);
  nxt_.clear();
  to_.clear();
  cap_.clear();
  for (int pos = 0; pos < K; ++pos) core_pos_[static_cast<std::size_t>(core_[pos])] = pos;

  for (int pos = 0; pos < K; ++pos) {
    int s = core_[static_cast<std::size_t>(pos)];
    add_arc(2 * pos, 2 * pos + 1, 1);  // vertex capacity
    if (a_.is_inner_boundary(s)) add_arc(source, 2 * pos, 1);
    if (a_.is_outer_boundary(s)) add_arc(2 * pos + 1, sink, 1);
    for (const std::int32_t* p = a_.neighbors_begin(s); p != a_.neighbors_end(s); ++p) {
      int q = core_pos_[static_cast<std::size_t>(*p)];
      if (q >= 0) add_arc(2 * pos + 1, 2 * q, 1);
    }
  }

  int nodes = 2 * K + 2;
  level_.assign(static_cast<std::size_t>(nodes), -1);
  iter_.assign(static_cast<std::size_t>(nodes), -1);
  int flow = 0;

  // Dinic, one unit per augmentation.
  auto bfs = [&]() {
    std::fill(level_.begin(), level_.end(), -1);
    queue_.clear();
    level_[static_cast<std::size_t>(source)] = 0;
    queue_.push_back(source);
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      int u = queue_[qi];
      for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = nxt_[static_cast<std::size_t>(e)]) {
        int v = to_[static_cast<std::size_t>(e)];
        if (cap_[static_cast<std::size_t>(e)] > 0 && level_[static_cast<std::size_t>(v)] < 0) {
          level_[static_cast<std::size_t>(v)] = level_[static_cast<std::size_t>(u)] + 1;
          queue_.push_back(v);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  };

  auto dfs = [&](auto&& self, int u) -> bool {
    if (u == sink) return true;
    for (int& e = iter_[static_cast<std::size_t>(u)]; e != -1; e = nxt_[static_cast<std::size_t>(e)]) {
      int v = to_[static_cast<std::size_t>(e)];
      if (cap_[static_cast<std::size_t>(e)] > 0 &&
          level_[static_cast<std::size_t>(v)] == level_[static_cast<std::size_t>(u)] + 1 &&
          self(self, v)) {
        cap_[static_cast<std::size_t>(e)] -= 1;
        cap_[static_cast<std::size_t>(e ^ 1)] += 1;
        return true;
      }
    }
    return false;
  };

  while (flow < limit && bfs()) {
    for (int i = 0; i < nodes; ++i) iter_[static_cast<std::size_t>(i)] = head_[static_cast<std::size_t>(i)];
    while (flow < limit && dfs(dfs, source)) ++flow;
  }

  if (witness && flow > 0) {
    // Decompose the flow into site paths; unit vertex capacities make them
    // simple and pairwise disjoint.
    std::vector<std::uint8_t> used(to_.size() / 2, 0);
    for (int e = head_[static_cast<std::size_t>(source)]; e != -1; e = nxt_[static_cast<std::size_t>(e)]) {
      if ((e & 1) || cap_[static_cast<std::size_t>(e)] != 0) continue;
      std::vector<std::int32_t> path;
      int node = to_[static_cast<std::size_t>(e)];  // in(v)
      while (node != sink) {
        path.push_back(core_[static_cast<std::size_t>(node / 2)]);
        int out_node = node + 1;
        int chosen = -1;
        for (int f = head_[static_cast<std::size_t>(out_node)]; f != -1; f = nxt_[static_cast<std::size_t>(f)]) {
          if ((f & 1) || cap_[static_cast<std::size_t>(f)] != 0 || used[static_cast<std::size_t>(f / 2)])
            continue;
          chosen = f;
          break;
        }
        if (chosen < 0) throw std::logic_error("flow decomposition: dead end");
        used[static_cast<std::size_t>(chosen / 2)] = 1;
        node = to_[static_cast<std::size_t>(chosen)];
      }
      witness->paths.push_back(std::move(path));
      witness->colors.push_back(color);
    }
  }

  for (int pos = 0; pos < K; ++pos) core_pos_[static_cast<std::size_t>(core_[pos])] = -1;
  return flow;
}

std::optional<int> ArmDetector::min_black_on_circuit(const SiteConfig& c) {
  const int size = a_.size();
  const int width = a_.outer_radius() - a_.inner_radius();
  const int S = width / 2 + 2;
  const int sheets = 2 * S + 1;
  const std::int32_t INF = std::numeric_limits<std::int32_t>::max();

  // Directed cut edges (u -> v) crossing the positive-x ray counterclockwise,
  // grouped by head v; every circuit that surrounds the hole uses one.
  std::vector<std::pair<std::int32_t, std::int32_t>> cut;
  for (int u = 0; u < size; ++u)
    for (int k = 0; k < a_.degree(u); ++k)
      if (a_.cross(u, k) == 1) cut.push_back({a_.neighbors_begin(u)[k], u});
  if (cut.empty()) return std::nullopt;
  std::sort(cut.begin(), cut.end());

  dist_.assign(static_cast<std::size_t>(sheets) * size, INF);
  std::vector<std::int32_t> touched;
  int best = INF;

  auto node_id = [&](int site, int sheet) { return (sheet + S) * size + site; };

  std::size_t lo = 0;
  while (lo < cut.size()) {
    std::size_t hi = lo;
    while (hi < cut.size() && cut[hi].first == cut[lo].first) ++hi;
    int b = cut[lo].first;

    touched.clear();
    std::deque<std::int32_t> dq;
    int start = node_id(b, 0);
    dist_[static_cast<std::size_t>(start)] = c.black(b) ? 1 : 0;
    touched.push_back(start);
    dq.push_back(start);
    while (!dq.empty()) {
      int id = dq.front();
      dq.pop_front();
      int d = dist_[static_cast<std::size_t>(id)];
      if (d >= best) continue;
      int site = id % size, sheet = id / size - S;
      for (int k = 0; k < a_.degree(site); ++k) {
        int v = a_.neighbors_begin(site)[k];
        int ns = sheet + a_.cross(site, k);
        if (ns < -S || ns > S) continue;
        int w = c.black(v) ? 1 : 0;
        int nid = node_id(v, ns);
        if (d + w < dist_[static_cast<std::size_t>(nid)]) {
          if (dist_[static_cast<std::size_t>(nid)] == INF) touched.push_back(nid);
          dist_[static_cast<std::size_t>(nid)] = d + w;
          if (w == 0)
            dq.push_front(nid);
          else
            dq.push_back(nid);
        }
      }
    }
    for (std::size_t e = lo; e < hi; ++e) {
      int a_site = cut[e].second;
      int d = dist_[static_cast<std::size_t>(node_id(a_site, 0))];
      if (d < best) best = d;
    }
    for (std::int32_t id : touched) dist_[static_cast<std::size_t>(id)] = INF;
    lo = hi;
  }

  if (best == INF) return std::nullopt;
  return best;
}

bool ArmDetector::detect_unchecked(const SiteConfig& c, const ArmQuery& q) {
  switch (q.sigma) {
    case SigmaClass::OneBlack: return has_one_arm(c, kBlack);
    case SigmaClass::OneWhite: return has_one_arm(c, kWhite);
    case SigmaClass::Mono:
      if (q.j == 1) return has_one_arm(c, kBlack);
      if (!has_one_arm(c, kBlack)) return false;
      return max_disjoint_arms(c, kBlack, q.j) >= q.j;
    case SigmaClass::PolyOneWhite:
      if (!has_one_arm(c, kWhite)) return false;
      if (q.j == 2) return has_one_arm(c, kBlack);
      if (!has_one_arm(c, kBlack)) return false;
      return max_disjoint_arms(c, kBlack, q.j - 1) >= q.j - 1;
  }
  return false;
}

bool ArmDetector::detect(const SiteConfig& c, const ArmQuery& q) {
  q.validate();
  if (c.annulus == nullptr || c.annulus->inner_radius() != q.n || c.annulus->outer_radius() != q.N)
    throw std::invalid_argument("detect: configuration annulus does not match query radii");
  if (c.annulus != &a_) throw std::invalid_argument("detect: detector bound to another annulus");
  return detect_unchecked(c, q);
}

std::vector<std::vector<std::int32_t>> ArmDetector::crossing_clusters(const SiteConfig& c,
                                                                      std::uint8_t color) {
  std::vector<std::vector<std::int32_t>> out;
  ++epoch_;
  std::vector<std::int32_t> comp;
  for (int s0 = 0; s0 < a_.size(); ++s0) {
    if (c.colors[static_cast<std::size_t>(s0)] != color) continue;
    if (stamp_a_[static_cast<std::size_t>(s0)] == epoch_) continue;
    comp.clear();
    stamp_a_[static_cast<std::size_t>(s0)] = epoch_;
    comp.push_back(s0);
    bool inner = false, outer = false;
    for (std::size_t qi = 0; qi < comp.size(); ++qi) {
      int u = comp[qi];
      inner = inner || a_.is_inner_boundary(u);
      outer = outer || a_.is_outer_boundary(u);
      for (const std::int32_t* p = a_.neighbors_begin(u); p != a_.neighbors_end(u); ++p) {
        int v = *p;
        if (stamp_a_[static_cast<std::size_t>(v)] == epoch_) continue;
        if (c.colors[static_cast<std::size_t>(v)] != color) continue;
        stamp_a_[static_cast<std::size_t>(v)] = epoch_;
        comp.push_back(v);
      }
    }
    if (inner && outer) {
      std::sort(comp.begin(), comp.end());
      out.push_back(comp);
    }
  }
  return out;
}

namespace {
const Annulus& config_annulus(const SiteConfig& c) {
  if (c.annulus == nullptr) throw std::invalid_argument("configuration has no annulus");
  return *c.annulus;
}
}  // namespace

bool has_one_arm(const SiteConfig& c, std::uint8_t color) {
  return ArmDetector(config_annulus(c)).has_one_arm(c, color);
}
int max_disjoint_arms(const SiteConfig& c, std::uint8_t color, int limit, ArmWitness* witness) {
  return ArmDetector(config_annulus(c)).max_disjoint_arms(c, color, limit, witness);
}
std::optional<int> min_black_on_circuit(const SiteConfig& c) {
  return ArmDetector(config_annulus(c)).min_black_on_circuit(c);
}
bool detect(const SiteConfig& c, const ArmQuery& q) {
  return ArmDetector(config_annulus(c)).detect(c, q);
}
std::vector<std::vector<std::int32_t>> crossing_clusters(const SiteConfig& c, std::uint8_t color) {
  return ArmDetector(config_annulus(c)).crossing_clusters(c, color);
}

}  // namespace perco
