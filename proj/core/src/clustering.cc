// Copyright 2026 The mmbeam Authors.
//
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

#include "mmbeam/clustering.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mmbeam/geometry.h"

namespace mmbeam {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class LinkageState {
 public:
  explicit LinkageState(std::span<const double> az) : n_(az.size()) {
    dist_.assign(n_ * n_, 0.0);
    for (size_t i = 0; i < n_; ++i) {
      for (size_t j = i + 1; j < n_; ++j) {
        const double d = CircularDistance(az[i], az[j]);
        dist_[i * n_ + j] = d;
        dist_[j * n_ + i] = d;
      }
    }
    alive_.assign(n_, true);
    members_.resize(n_);
    for (size_t i = 0; i < n_; ++i) members_[i] = {static_cast<int>(i)};
    nn_.assign(n_, -1);
    nn_dist_.assign(n_, kInf);
    for (size_t i = 0; i < n_; ++i) RefreshNeighbour(i);
  }

  // Slot i always holds the cluster whose first member is i.
  void Run(double max_diameter) {
    for (size_t remaining = n_; remaining > 1; --remaining) {
      size_t a = n_;
      double best = kInf;
      for (size_t i = 0; i < n_; ++i) {
        if (alive_[i] && nn_dist_[i] < best) {
          best = nn_dist_[i];
          a = i;
        }
      }
      if (a == n_ || best > max_diameter) return;
      Merge(a, static_cast<size_t>(nn_[a]));
    }
  }

  std::vector<Cluster> Result() const {
    std::vector<Cluster> out;
    for (size_t i = 0; i < n_; ++i) {
      if (alive_[i]) out.push_back(members_[i]);
    }
    return out;
  }

 private:
  double& D(size_t i, size_t j) { return dist_[i * n_ + j]; }

  void RefreshNeighbour(size_t i) {
    nn_[i] = -1;
    nn_dist_[i] = kInf;
    for (size_t j = 0; j < n_; ++j) {
      if (j == i || !alive_[j]) continue;
      if (D(i, j) < nn_dist_[i]) {  // strict: lower slot wins ties
        nn_dist_[i] = D(i, j);
        nn_[i] = static_cast<int>(j);
      }
    }
  }

  void Merge(size_t a, size_t b) {
    const size_t keep = std::min(a, b);
    const size_t drop = std::max(a, b);
    alive_[drop] = false;
    members_[keep].insert(members_[keep].end(), members_[drop].begin(),
                          members_[drop].end());
    std::sort(members_[keep].begin(), members_[keep].end());
    members_[drop].clear();
    for (size_t k = 0; k < n_; ++k) {
      if (!alive_[k] || k == keep) continue;
      const double d = std::max(D(keep, k), D(drop, k));
      D(keep, k) = d;
      D(k, keep) = d;
    }
    RefreshNeighbour(keep);
    for (size_t k = 0; k < n_; ++k) {
      if (!alive_[k] || k == keep) continue;
      if (nn_[k] == static_cast<int>(keep) || nn_[k] == static_cast<int>(drop)) {
        RefreshNeighbour(k);
      } else if (D(k, keep) < nn_dist_[k] ||
                 (D(k, keep) == nn_dist_[k] && static_cast<int>(keep) < nn_[k])) {
        nn_dist_[k] = D(k, keep);
        nn_[k] = static_cast<int>(keep);
      }
    }
  }

  size_t n_;
  std::vector<double> dist_;
  std::vector<bool> alive_;
  std::vector<Cluster> members_;
  std::vector<int> nn_;
  std::vector<double> nn_dist_;
};

}  // namespace

std::vector<Cluster> CompleteLinkageCluster(std::span<const double> azimuths_deg,
                                            double max_diameter_deg) {
  if (!(max_diameter_deg > 0.0)) {
    throw std::invalid_argument("max cluster diameter must be positive");
  }
  if (azimuths_deg.empty()) return {};
  LinkageState state(azimuths_deg);
  state.Run(max_diameter_deg);
  return state.Result();
}

double ClusterDiameter(std::span<const double> azimuths_deg, const Cluster& members) {
  double diameter = 0.0;
  for (size_t i = 0; i < members.size(); ++i) {
    for (size_t j = i + 1; j < members.size(); ++j) {
      diameter = std::max(diameter, CircularDistance(azimuths_deg[members[i]],
                                                     azimuths_deg[members[j]]));
    }
  }
  return diameter;
}

double ClusterDirection(std::span<const double> azimuths_deg, const Cluster& members) {
  if (members.empty()) throw std::invalid_argument("empty cluster");
  std::vector<double> points;
  points.reserve(members.size());
  for (int m : members) points.push_back(WrapDegrees(azimuths_deg[m]));
  std::sort(points.begin(), points.end());
  // The widest gap (including the one across 360) is the part not covered.
  size_t gap_end = 0;
  double widest = points.front() + 360.0 - points.back();
  for (size_t i = 1; i < points.size(); ++i) {
    const double gap = points[i] - points[i - 1];
    if (gap > widest) {
      widest = gap;
      gap_end = i;
    }
  }
  const double lo = points[gap_end];
  double hi = points[(gap_end + points.size() - 1) % points.size()];
  if (hi < lo) hi += 360.0;
  return WrapDegrees(lo + 0.5 * (hi - lo));
}

double ClusterDirection(std::span<const double> azimuths_deg) {
  Cluster all(azimuths_deg.size());
  std::iota(all.begin(), all.end(), 0);
  return ClusterDirection(azimuths_deg, all);
}

}  // namespace mmbeam
