#pragma once

// Modules over a triangular algebra R = (Lambda 0; M Gamma) as triples
// (X, Y)_f with f: Y (x)_Gamma M -> X, the functor - (x)_Gamma M, the lift
// (X, 0) (+) (Y (x) M, Y), and the lifting criteria.

#include <optional>
#include <string>
#include <vector>

#include "tautri/bqa.hpp"
#include "tautri/rep.hpp"
#include "tautri/stt.hpp"
#include "tautri/tau.hpp"

namespace tautri {

struct Triple {
  Representation X;  // over Lambda
  Representation Y;  // over Gamma
  Morphism f;        // Y (x) M -> X
};

/// e_j M as a right Lambda-module, for a Gamma vertex j.
Representation m_row_module(const TriSplit& s, int gamma_vertex);
/// M as a right Lambda-module.
Representation right_M_module(const TriSplit& s);
/// M as a left Gamma-module, i.e. a right module over Gamma^op.
Representation left_M_module(const TriSplit& s);

/// q (x) M for a map of Gamma-projectives: (+) e_u M -> (+) e_t M.
Morphism tensor_proj_map(const ProjMap& q, const TriSplit& s);
/// Y (x)_Gamma M = coker(Q1 (x) M -> Q0 (x) M) for the minimal presentation.
Representation tensor_with_M(const Representation& y, const TriSplit& s);

/// Restrictions of an R-module to the A and B vertices.
Representation restrict_to_lambda(const Representation& z, const TriSplit& s);
Representation restrict_to_gamma(const Representation& z, const TriSplit& s);
/// X as an R-module, zero on the B vertices.
Representation extend_by_zero(const Representation& x, const TriSplit& s);
/// A Lambda- or Gamma-projective map viewed over R (e_j ↦ e_j R).
ProjMap lambda_map_to_R(const ProjMap& p, const TriSplit& s);
ProjMap gamma_map_to_R(const ProjMap& q, const TriSplit& s);
ProjMap proj_map_sum(const ProjMap& a, const ProjMap& b);

/// (X, 0) (+) (Y (x) M, Y) over R.
Representation lift(const Representation& x, const Representation& y, const TriSplit& s);
/// The presentation sigma_X (+) sigma_Y of the lift, over R.
ProjMap lift_presentation(const Representation& x, const Representation& y, const TriSplit& s);

Triple rep_to_triple(const Representation& z, const TriSplit& s);
Representation triple_to_rep(const Triple& t, const TriSplit& s);

struct LiftCheck {
  bool verdict = false;
  std::vector<int> failing;  // every failing condition among 1..4
};
/// (1) X support tau-tilting, (2) Y support tau-tilting,
/// (3) Hom(Y (x) M, tau X) = 0, (4) Y (x) M vanishes on the annihilating
/// vertices of X.
LiftCheck check_lift_stt(const Representation& x, const Representation& y, const TriSplit& s);
/// (1) X tau-rigid, (2) Y tau-rigid, (3) Hom(Y (x) M, tau X) = 0.
bool check_lift_tau_rigid(const Representation& x, const Representation& y, const TriSplit& s);

struct TiltingCheck {
  bool verdict = false;             // the lift is tilting over R
  bool components = false;          // X, Y tilting, Y (x) M in Gen X, pd(lift) <= 1
  bool left_M_projective = false;
  bool sigma_Y_tensor_monic = false;
};
TiltingCheck check_lift_tilting(const Representation& x, const Representation& y, const TriSplit& s);

/// Names R-modules by their triples: "(Xlabel,Ylabel)" per indecomposable
/// summand, summands ordered by (Y, X) with 0 first.
class TripleLabeler {
 public:
  explicit TripleLabeler(const TriSplit& s);

  const Labeler& lambda_labeler() const { return lambda_; }
  const Labeler& gamma_labeler() const { return gamma_; }
  std::string summand_label(const Representation& indecomposable) const;
  std::vector<std::string> summand_labels(const Representation& z) const;
  std::string label(const Representation& z) const;

 private:
  using Key = std::pair<std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>>;
  Key key(const Representation& indecomposable) const;

  const TriSplit& split_;
  Labeler lambda_;
  Labeler gamma_;
};

struct SweepRow {
  std::string x_label;  // pair labels of the corner posets
  std::string y_label;
  LiftCheck check;
  std::string lift_label;        // triple labels of the lift, when the check passes
  std::optional<bool> direct;    // is_support_tau_tilting(lift) over R, when verified
};

/// Every (X, Y) from the two corner posets, rows ordered as the posets.
std::vector<SweepRow> sweep_lifts(const TriSplit& s, const SttPoset& lambda_poset, const SttPoset& gamma_poset,
                                  const TripleLabeler& lab, bool verify);
/// Single-threaded reference for sweep_lifts.
std::vector<SweepRow> sweep_lifts_serial(const TriSplit& s, const SttPoset& lambda_poset,
                                         const SttPoset& gamma_poset, const TripleLabeler& lab, bool verify);

}  // namespace tautri
