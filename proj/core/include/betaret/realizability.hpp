#pragma once

#include <optional>
#include <vector>

#include "betaret/return_map.hpp"

namespace betaret {

/// Branches of the first-return map for both first digits, grown on demand.
class BranchTable {
 public:
  explicit BranchTable(const BetaCtx& ctx, int time_cap = 64);

  /// Branches with first digit `digit` and return time exactly `time`.
  const std::vector<Branch>& at(int digit, int time);
  int time_cap() const { return time_cap_; }

 private:
  const BetaCtx* ctx_;
  int time_cap_;
  BranchEnumerator enum_[2];
  std::vector<std::vector<Branch>> by_time_[2];  // index = time - 1
};

struct Leaf {
  Itv domain;
  MapWord composed;
  Itv image;
  std::vector<int> omega_prefix;
  /// Return time of each encoded return.
  std::vector<int> times;
  /// beta^|composed|, the slope of the composed map on the domain.
  CertReal slope = CertReal::from_long(1);
};

/// Leaves sharing an image have the same future; one class stands for all of them.
struct LeafClass {
  Itv image;
  mpz_class multiplicity;
  /// Leftmost member.
  Leaf representative;
};

struct RealizationTree {
  int level = 0;
  std::vector<LeafClass> classes;
  /// Every leaf while `listed`; otherwise the class representatives.
  std::vector<Leaf> leaves;
  bool listed = true;
  bool covering = false;
  std::vector<mpz_class> leaf_count_per_level;
  std::vector<bool> covering_per_level;

  bool empty() const { return classes.empty(); }
};

struct RealizeOptions {
  int depth_cap = 16;
  int time_cap = 64;
  /// Above this many leaves the concrete list is dropped and only classes go on.
  std::size_t leaf_cap = 1u << 12;
  /// Hard limit on distinct images.
  std::size_t class_cap = 1u << 14;
};

/// Root leaf: S with the empty word.
Leaf root_leaf(const BetaCtx& ctx);

/// Leaves surviving one more constrained return: each leaf image is cut by the
/// branch domains of (digit, time) and pushed forward.
std::vector<Leaf> extend_leaves(const BetaCtx& ctx, BranchTable& table, const std::vector<Leaf>& leaves,
                                int digit, int time);
/// Same step on classes, over every digit in `digits`; children with one image are merged.
std::vector<LeafClass> extend_classes(const BetaCtx& ctx, BranchTable& table, const std::vector<LeafClass>& classes,
                                      const std::vector<int>& digits, int time);

/// Sorted, merged components of the leaf domains.
std::vector<Itv> union_of_domains(const BetaCtx& ctx, const std::vector<Leaf>& leaves);
/// Whether the class images cover S up to finitely many points.
bool images_cover_switch(const BetaCtx& ctx, const std::vector<LeafClass>& classes);

struct RealizationWitness {
  CertReal x;
  std::vector<int> omega_prefix;
};

struct FixedOmegaResult {
  /// Constraint set after each return, level 0 being S. Complete only when `listed`.
  std::vector<std::vector<Itv>> levels;
  bool listed = true;
  std::vector<mpz_class> leaf_count_per_level;
  std::vector<LeafClass> classes;
  std::optional<RealizationWitness> witness;

  bool nonempty() const { return !classes.empty(); }
  /// Final constraint set; throws CapExceeded when it was not listed.
  const std::vector<Itv>& components() const;
};

/// {x in S : r_i(omega, x) = times[i], i < n}.
FixedOmegaResult realize_fixed_omega(const BetaCtx& ctx, const std::vector<int>& omega_prefix,
                                     const std::vector<int>& times, const RealizeOptions& opts = {});

struct ExistsResult {
  RealizationTree tree;
  std::optional<RealizationWitness> witness;

  bool realizable() const { return witness.has_value(); }
};

/// Realizability of `times` for some omega, trying both digits at every return.
ExistsResult realize_exists_omega(const BetaCtx& ctx, const std::vector<int>& times,
                                  const RealizeOptions& opts = {});

struct ImpossibilityResult {
  bool impossible = false;
  /// First depth with an empty constraint set, or the cap reached.
  int depth = 0;
};

/// Decides at growing depth whether (j)^d is realizable under omega = (digit)^inf.
ImpossibilityResult certify_impossible_constant(const BetaCtx& ctx, int j, int omega_digit, int cap = 16,
                                                const RealizeOptions& opts = {});

}  // namespace betaret
