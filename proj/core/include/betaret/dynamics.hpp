#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "betaret/cert_real.hpp"

namespace betaret {

struct DynamicsOptions {
  /// Precision ceiling for comparisons involving inexact values.
  mpfr_prec_t max_bits = kDefaultMaxBits;
  /// Working precision of the cached constants.
  mpfr_prec_t working_bits = 128;
  /// Default cap on forced/return iterations.
  long step_cap = 10000;
};

/// A base beta in (1, 2) with the constants every map needs:
/// I = [0, 1/(beta-1)] and the switch region S = [1/beta, 1/(beta(beta-1))].
class BetaCtx {
 public:
  explicit BetaCtx(CertReal beta, DynamicsOptions options = {});

  const CertReal& beta() const { return beta_; }
  const CertReal& inv_beta() const { return inv_beta_; }
  const CertReal& right_end() const { return right_end_; }
  const CertReal& switch_lo() const { return inv_beta_; }
  const CertReal& switch_hi() const { return switch_hi_; }
  const CertReal& switch_mid() const { return switch_mid_; }
  const DynamicsOptions& options() const { return options_; }

  /// |S| = switch_hi - switch_lo.
  CertReal switch_length() const { return switch_hi_ - inv_beta_; }

  Ordering cmp(const CertReal& a, const CertReal& b) const {
    return compare(a, b, options_.max_bits);
  }
  /// As cmp, but an undecidable comparison throws UnresolvableAtPrecision.
  Ordering cmp_certain(const CertReal& a, const CertReal& b, std::string_view what) const;
  bool less(const CertReal& a, const CertReal& b) const;
  bool less_equal(const CertReal& a, const CertReal& b) const;
  bool equal(const CertReal& a, const CertReal& b) const;

 private:
  DynamicsOptions options_;
  CertReal beta_;
  CertReal inv_beta_;
  CertReal right_end_;
  CertReal switch_hi_;
  CertReal switch_mid_;
};

enum class Region { LeftOfS, InteriorS, SwitchBoundaryLo, SwitchBoundaryHi, RightOfS, OutsideDomain };
std::string_view to_string(Region r);
inline bool in_switch(Region r) {
  return r == Region::InteriorS || r == Region::SwitchBoundaryLo || r == Region::SwitchBoundaryHi;
}

/// Digit source for the random transformation: omega in {0,1}^N.
class OmegaSource {
 public:
  enum class Kind { FixedWord, AllZeros, AllOnes, Periodic, Stream };

  static OmegaSource all_zeros();
  static OmegaSource all_ones();
  static OmegaSource constant(int digit) { return digit == 0 ? all_zeros() : all_ones(); }
  /// `word` followed by `tail` forever.
  static OmegaSource fixed_word(std::vector<int> word, int tail = 0);
  static OmegaSource periodic(std::vector<int> word);
  /// External digit sequence; the callable must be deterministic in its index.
  static OmegaSource stream(std::function<int(std::size_t)> digits, std::string label = "stream");
  /// Stream of pseudo-random digits derived from a counter-based hash of `seed`.
  static OmegaSource random(std::uint64_t seed);

  int digit(std::size_t index) const;
  Kind kind() const { return kind_; }
  std::string describe() const;

 private:
  OmegaSource(Kind kind, std::vector<int> word, int tail)
      : kind_(kind), word_(std::move(word)), tail_(tail) {}

  Kind kind_;
  std::vector<int> word_;
  int tail_ = 0;
  std::shared_ptr<const std::function<int(std::size_t)>> stream_;
  std::string label_;
};

/// T_d(x) = beta*x - d. With `check_domain`, a result certifiably outside I
/// raises OutOfDomain.
CertReal apply_digit(const BetaCtx& ctx, int digit, const CertReal& x, bool check_domain = false);
/// T_d^{-1}(y) = (y + d) / beta.
CertReal invert_digit(const BetaCtx& ctx, int digit, const CertReal& y);

Region classify_point(const BetaCtx& ctx, const CertReal& x);

struct KStep {
  CertReal next;
  bool consumed = false;
  int digit = 0;
};

/// One step of the random transformation: forced digits outside S, omega(idx) on S.
KStep kbeta_step(const BetaCtx& ctx, const OmegaSource& omega, std::size_t idx, const CertReal& x);
CertReal greedy_step(const BetaCtx& ctx, const CertReal& x);
CertReal lazy_step(const BetaCtx& ctx, const CertReal& x);

/// x -> 1/(beta-1) - x; conjugates T_0 and T_1.
CertReal reflect(const BetaCtx& ctx, const CertReal& x);

enum class OrbitStop { HitInterior, HitBoundaryLo, HitBoundaryHi, Escaped, StepCapReached };
std::string_view to_string(OrbitStop s);

struct ForcedOrbit {
  std::vector<CertReal> trajectory;  // x0 and every iterate
  std::vector<int> word;             // forced digits applied
  OrbitStop stop = OrbitStop::StepCapReached;

  long steps() const { return static_cast<long>(word.size()); }
};

/// Iterates T_0 left of S and T_1 right of S until the orbit meets S.
ForcedOrbit forced_orbit(const BetaCtx& ctx, const CertReal& x0, long max_steps);

}  // namespace betaret
