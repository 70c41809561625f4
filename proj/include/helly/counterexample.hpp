#pragma once

#include <map>
#include <vector>

#include "helly/helly_solver.hpp"
#include "helly/normed_space.hpp"

namespace helly {

/// The hard family in l_inf^{2k}: 2k sets whose k-wise intersections all meet
/// the unit ball while every center stays at distance at least k/(2k-1) from
/// the farthest set. Functionals u_i certify the bound; the +-1 vectors x_J
/// witness the intersections.
struct CounterexampleInstance {
  int k = 0;
  double a_k = 0.0;  // k / (2k - 1)
  Family family;     // sets K_i = conv{x_J : i in J}, i in [2k]
  std::vector<Vec> functionals;  // u_i, unit l_1 norm, sum zero
  WitnessMap witnesses;          // J (sorted index list) -> x_J

  LowerCertificate certificate() const { return LowerCertificate{functionals, a_k}; }
};

/// Builds the instance for 1 <= k <= 10 (vertex budget C(2k, k)).
/// Subsets enumerate in colexicographic order.
CounterexampleInstance build_linf_counterexample(int k);

/// Re-derives every identity of the construction in exact rational
/// arithmetic (k <= 6): unit functional norms, zero sum, pairing values
/// <u_i, x_J> = -a_k on incident witnesses, witness coordinate structure,
/// and the per-set vertex count C(2k-1, k-1).
bool exact_invariant_check(int k);

/// Linear embedding of the 2k-dimensional l_1 certificate space into the
/// dual of a target space; columns are the images of the basis functionals.
struct Embedding {
  Eigen::MatrixXd map;  // target_dim x 2k
  double eta = 0.0;     // inverse-norm slack, >= 0
};

Embedding identity_embedding(int k);

struct TransferResult {
  Family family;                // in the target space
  LowerCertificate certificate; // bound a_k/(1+eta) - delta
  WitnessMap witnesses;
  double achieved_gap = 0.0;    // worst realized <psi_i, x_J> + a_k/(1+eta)
};

/// Carries the construction into a target space along the embedding: the
/// functionals map through T; each witness is realized as a unit-ball point
/// whose pairings with the incident functionals stay below
/// -a_k/(1+eta) + delta. Throws if a witness cannot be realized at the
/// requested delta (reporting the best achievable gap).
TransferResult transfer_counterexample(int k, const NormSpec& target,
                                       const Embedding& emb, double delta);

}  // namespace helly
