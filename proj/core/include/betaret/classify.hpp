#pragma once

#include <string>
#include <vector>

#include "betaret/dynamics.hpp"

namespace betaret {

enum class MarkerKind { Alpha, Gamma, Eta };
std::string_view to_string(MarkerKind kind);

/// alpha_k: x^{k+1} - 2x^k + x - 1
/// gamma_k: x^{k+1} - x^k - ... - x - 1
/// eta_k:   2x^{k+1} - 4x^k + 1
Polynomial marker_polynomial(MarkerKind kind, int k);

/// Unique root of the marker polynomial in (1, 2). Results are cached per (kind, k).
CertReal marker(MarkerKind kind, int k, mpfr_prec_t bits = kMinPrecision);

struct Regime {
  enum class Tag { BelowOrAtGolden, ThmFree, ThmExists, Gap };
  Tag tag = Tag::BelowOrAtGolden;
  int k = 0;

  std::string to_string() const;
  friend bool operator==(const Regime&, const Regime&) = default;
};

/// Places beta among the interleaved markers
///   gamma_1 < eta_1 < alpha_2 < gamma_2 < eta_2 < alpha_3 < ...
/// Throws KMaxExceeded past eta_{k_max}'s regime and UnresolvableAtPrecision
/// when beta cannot be separated from a marker.
Regime classify_beta(const CertReal& beta, int k_max = 64, mpfr_prec_t max_bits = kDefaultMaxBits);

struct HopCheck {
  /// (T_1^{k-1} o T_0)(1/beta) > 1/(beta(beta-1))
  bool jump = false;
  /// (T_1^k o T_0)(1/beta) <= 1/beta
  bool closure = false;
  bool closure_equality = false;
};

HopCheck check_hop(const BetaCtx& ctx, int k);

/// (T_1^k o T_0)(1/beta) in (1/beta, 1/(2(beta-1))] and its mirror image
/// (T_0^k o T_1)(1/(beta(beta-1))) in [1/(2(beta-1)), 1/(beta(beta-1))).
bool check_crossover(const BetaCtx& ctx, int k);

struct MVerdict {
  enum class Tag { Member, NonMember, Unknown };
  enum class Witness { None, BoundaryHit, UnivoquePersists };
  Tag tag = Tag::Unknown;
  Witness witness = Witness::None;
  /// Forced steps taken from 1 = T_0(1/beta).
  long depth = 0;
  /// Forced digits applied from 1; T_0 from 1/beta is implicit.
  std::vector<int> word;
  /// For a boundary hit, which endpoint of S was reached.
  Region landed = Region::LeftOfS;

  std::string to_string() const;
};

/// beta in M iff the forced orbits of 1/beta and 1/(beta(beta-1)) never enter
/// the interior of S. Runs the orbit of 1 and its mirror orbit in lockstep.
MVerdict m_membership(const BetaCtx& ctx, long max_steps = 5000);

}  // namespace betaret
