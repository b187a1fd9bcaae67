#pragma once

// Affine group acting on positive-frequency signals, discretized on a
// log-uniform frequency grid. Dilations by on-grid factors e^{kh} are exact
// cell shifts; translations act by modulation phases.

#include "qha/actions.hpp"

namespace qha {

struct WaveletGrid {
  int cells = 16;
  double log_step = 0.17328679513998632;  // ln 2 / 4
  double omega0 = 4.0;
  /// Refinement level: the translation range is [-32 level, 32 level].
  int level = 1;

  double center(int j) const;
  double lower(int j) const;
  double upper(int j) const;
  double width(int j) const { return upper(j) - lower(j); }
  double midpoint(int j) const { return 0.5 * (lower(j) + upper(j)); }
  double omega_min() const { return lower(0); }
  double omega_max() const { return upper(cells - 1); }
  double b_extent() const { return 32.0 * level; }
  /// Odd node count so b = 0 is a node; step below 1/(omega_max - omega_min).
  std::size_t b_nodes() const;
  void validate() const;
};

/// Dilations a = e^{kh} for |k| < cells, translations uniform on [-B, B].
std::shared_ptr<const QuadratureGroup> wavelet_group(const WaveletGrid& grid);

/// Pointwise-frequency operator diag(e^{-2 pi i b omega_j}) S_k with
/// (S_k phi)_j = phi_{j+k} (truncated). Throws ParameterError for off-grid a.
Matrix wavelet_rep(const WaveletGrid& grid, const Params& p);

/// Cell-averaged phase (1/|C_j|) int_{C_j} e^{-2 pi i b w} dw.
cplx cell_phase(const WaveletGrid& grid, int j, double b);

/// Compression of the affine representation to normalized cell indicators:
/// diag(cell_phase(j, b)) S_k.
Matrix compressed_rep(const WaveletGrid& grid, const Params& p);

/// Action on M_cells by x -> V x V^* with V the compressed representation.
/// Structural probe: pointwise operators on an interior window.
Action affine_wavelet_action(const WaveletGrid& grid);

/// diag(h / |C_j|): the inverse-frequency multiplier compressed to the cells.
AlgebraElement inverse_frequency_multiplier(const WaveletGrid& grid);

/// Node indices with b = 0 (pure dilations).
std::vector<std::size_t> dilation_nodes(const WaveletGrid& grid);

}  // namespace qha
