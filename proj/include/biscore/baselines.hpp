#pragma once

#include "biscore/cluster.hpp"
#include "biscore/graph.hpp"
#include "biscore/labeling.hpp"
#include "biscore/random.hpp"

namespace biscore {

struct CoclusterLabels {
  Labeling rows;
  Labeling cols;
  // Rows of the embedding with zero norm, left at the origin.
  Index zero_rows = 0;
  Index zero_cols = 0;
};

// Normalized bipartite spectral clustering: top kappa = min(K, L) singular
// vectors, each node's embedding row scaled to unit length (zero rows stay
// at the origin), then k-means with K on rows and L on columns.
CoclusterLabels nbisc(const BipartiteAdjacency& a, int K, int L, const KmeansOptions& opts, Rng& rng);

// Degree-normalized spectral co-clustering. With regularized degrees
// d_r = rowsums + mean(rowsums) and d_c likewise, takes the top kappa
// singular vectors of D_r^-1/2 A D_c^-1/2 and clusters the rows of
// D_r^-1/2 U (K groups) and D_c^-1/2 V (L groups).
// Throws NumericalError on an all-zero matrix.
CoclusterLabels spectral_coclustering(const BipartiteAdjacency& a, int K, int L, const KmeansOptions& opts,
                                      Rng& rng);

}  // namespace biscore
