#pragma once

namespace gapmm {

// Base values; most are multiplied by a problem scale at the point of use.
struct Tolerances {
  double recon = 1e-10;
  double ortho = 1e-10;
  double form = 1e-9;
  double gap = 1e-8;
  double graph = 1e-8;
  double sv = 1e-10;
  double rank = 1e-10;
  double minimax = 1e-7;
  double negativity = 1e-10;
  double offdiag = 1e-10;
  double block_diag = 1e-9;
  double identity = 1e-9;
  double heinz = 1e-9;
  double heinz_endpoint = 1e-10;
  double pos_def = 1e-10;
  double projector_bound = 1e-10;
  double offdiag_dist = 1e-12;
  double lipschitz = 1e-8;
  double route = 1e-8;
  double stokes = 1e-8;

  Tolerances scaled(double factor) const;
  static Tolerances uniform(double value);
  // Defaults multiplied by GAPMM_TOL_SCALE when that variable is set.
  static Tolerances from_env();
};

}  // namespace gapmm
