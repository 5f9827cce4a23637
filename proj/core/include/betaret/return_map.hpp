#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "betaret/dynamics.hpp"

namespace betaret {

/// Finite composition T_{d_n} o ... o T_{d_1}, applied left to right over `digits`.
class MapWord {
 public:
  MapWord() = default;
  explicit MapWord(std::vector<int> digits);

  const std::vector<int>& digits() const { return digits_; }
  std::size_t length() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }

  MapWord then(int digit) const;
  MapWord complement() const;
  std::string to_string() const;

  /// Step-by-step evaluation.
  CertReal eval(const BetaCtx& ctx, const CertReal& x) const;
  /// beta^n x - sum d_j beta^(n-j).
  CertReal eval_affine(const BetaCtx& ctx, const CertReal& x) const;
  /// Inverse of eval.
  CertReal preimage(const BetaCtx& ctx, const CertReal& y) const;

  friend bool operator==(const MapWord&, const MapWord&) = default;

 private:
  std::vector<int> digits_;
};

/// Interval with explicit endpoint closure. An empty interval is flagged, never
/// represented by lo > hi.
struct Itv {
  CertReal lo;
  CertReal hi;
  bool lo_closed = true;
  bool hi_closed = true;
  bool empty = false;

  static Itv closed(CertReal lo, CertReal hi) { return {std::move(lo), std::move(hi), true, true, false}; }
  static Itv none() { return {CertReal(), CertReal(), false, false, true}; }

  CertReal length() const { return empty ? CertReal() : hi - lo; }
  std::string to_string(int digits = 10) const;
};

Itv intersect(const BetaCtx& ctx, const Itv& a, const Itv& b);
bool is_degenerate(const BetaCtx& ctx, const Itv& a);
bool contains(const BetaCtx& ctx, const Itv& a, const CertReal& x);
/// Same endpoints, ignoring closure.
bool same_span(const BetaCtx& ctx, const Itv& a, const Itv& b);
/// Total order on nonempty intervals: by lo, closed-before-open, then hi.
int compare_itv(const BetaCtx& ctx, const Itv& a, const Itv& b);
Itv switch_region(const BetaCtx& ctx);
Itv reflect(const BetaCtx& ctx, const Itv& a);

struct Branch {
  MapWord word;
  Itv domain;
  int return_time = 0;
  Itv image;
  bool full = false;
  /// Single-point domain; reachable only through an endpoint.
  bool degenerate = false;

  int first_digit() const { return word.digits().front(); }
};

/// Piece of S whose forced orbit has not yet come back to S.
struct PendingPiece {
  MapWord word;
  Itv domain;
  Itv image;
  int next_digit = 0;
};

/// Breadth-first propagation of S under T_{first_digit} followed by forced
/// digits. Each call to next_level() advances the return time by one.
class BranchEnumerator {
 public:
  BranchEnumerator(const BetaCtx& ctx, int first_digit, std::size_t piece_cap = 1u << 16);

  /// Branches whose return time equals the new level.
  std::vector<Branch> next_level();
  int time() const { return time_; }
  const std::vector<PendingPiece>& pending() const { return pending_; }
  bool finished() const { return time_ > 0 && pending_.empty(); }

 private:
  const BetaCtx* ctx_;
  int first_digit_;
  std::size_t piece_cap_;
  int time_ = 0;
  std::vector<PendingPiece> pending_;
};

/// Pending pieces sharing one image evolve identically; only their domains
/// differ. All members at time t have slope beta^t, so a class is fully
/// described by its image, its size and one member.
struct PendingClass {
  Itv image;
  int next_digit = 0;
  mpz_class multiplicity;
  PendingPiece representative;  // leftmost member
};

struct BranchClass {
  int return_time = 0;
  Itv image;
  mpz_class multiplicity;
  bool full = false;
  bool degenerate = false;
  Branch representative;  // leftmost member
  /// Total Lebesgue measure of the member domains.
  CertReal domain_mass;
};

/// Class-level version of BranchEnumerator; cost grows with the number of
/// distinct images rather than the number of branches.
class BranchClassEnumerator {
 public:
  BranchClassEnumerator(const BetaCtx& ctx, int first_digit, std::size_t class_cap = 4096);

  std::vector<BranchClass> next_level();
  int time() const { return time_; }
  const std::vector<PendingClass>& pending() const { return pending_; }
  /// beta^time
  const CertReal& scale() const { return scale_; }
  /// Measure of the set of points of S not yet returned.
  CertReal pending_mass() const;

 private:
  const BetaCtx* ctx_;
  std::size_t class_cap_;
  int time_ = 0;
  CertReal scale_;
  std::vector<PendingClass> pending_;
};

/// One forced step of a pending piece followed by the split against
/// [0, lo), S and (hi, end].
struct PieceSplit {
  std::optional<PendingPiece> left;
  std::optional<Branch> hit;
  std::optional<PendingPiece> right;
};
PieceSplit split_piece(const BetaCtx& ctx, const PendingPiece& p, int time);

struct ReturnRecord {
  CertReal start;
  CertReal end;
  int time = 0;
  MapWord word;
  int omega_digits_consumed = 0;
};

ReturnRecord first_return(const BetaCtx& ctx, const OmegaSource& omega, std::size_t idx,
                          const CertReal& x, long cap);
std::vector<ReturnRecord> return_sequence(const BetaCtx& ctx, const OmegaSource& omega,
                                          const CertReal& x, std::size_t count, long cap);

std::vector<Branch> enumerate_branches(const BetaCtx& ctx, int first_digit, int max_time);
/// Smallest return time over both first digits; CapExceeded past `time_cap`.
int min_return_time(const BetaCtx& ctx, int time_cap = 256);

struct GraphSegment {
  std::size_t branch_index = 0;
  int return_time = 0;
  std::vector<std::pair<CertReal, CertReal>> points;
};

std::vector<GraphSegment> graph_samples(const BetaCtx& ctx, int first_digit, int max_time,
                                        int pts_per_branch);

}  // namespace betaret
