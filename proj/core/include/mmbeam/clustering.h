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

#ifndef MMBEAM_CLUSTERING_H_
#define MMBEAM_CLUSTERING_H_

#include <span>
#include <vector>

namespace mmbeam {

// One cluster as indices into the input, ascending.
using Cluster = std::vector<int>;

// Agglomerative complete-linkage clustering of azimuths (degrees) under the
// circular distance. Merging stops once the closest pair of clusters is
// farther apart than `max_diameter_deg`. Nearest neighbours are cached per
// cluster and distances to a merged cluster follow the max rule, so a run
// costs O(n^2) in the common case.
//
// Among equally close pairs the one with the smallest (first member, first
// member) wins. Clusters come back ordered by their first member.
std::vector<Cluster> CompleteLinkageCluster(std::span<const double> azimuths_deg,
                                            double max_diameter_deg);

// Largest pairwise circular distance inside `members`.
double ClusterDiameter(std::span<const double> azimuths_deg, const Cluster& members);

// Midpoint between the two ends of the arc holding the cluster. The arc is
// the circle minus the widest gap between neighbouring members.
double ClusterDirection(std::span<const double> azimuths_deg, const Cluster& members);
double ClusterDirection(std::span<const double> azimuths_deg);

}  // namespace mmbeam

#endif  // MMBEAM_CLUSTERING_H_
