#pragma once

#include <optional>
#include <vector>

#include "betaret/classify.hpp"
#include "betaret/return_map.hpp"

namespace betaret {

struct GlstReport {
  // Certified: fullness at every depth follows from a boundary-hit certificate
  enum class Verdict { ConsistentWithGLST, Certified, NotGLST };

  int first_digit = 0;
  /// Largest return time examined.
  int depth = 0;
  std::vector<BranchClass> classes;
  /// Every branch, when their number stays within the listing cap.
  std::vector<Branch> branches;
  bool branches_listed = false;
  /// Fullness of all nondegenerate branches.
  bool all_full = true;
  std::optional<Branch> incomplete_witness;
  /// |S| minus the measure of all branch domains found.
  CertReal length_gap;
  Verdict verdict = Verdict::ConsistentWithGLST;
  MVerdict membership;
};

std::string_view to_string(GlstReport::Verdict v);

/// Checks fullness of every branch of U_{beta,first_digit} with return time
/// up to max_time. Stops at the first incomplete branch.
GlstReport glst_verify(const BetaCtx& ctx, int first_digit, int max_time, std::size_t list_cap = 4096);

struct ExpectedReturn {
  /// sum_{i <= depth} i |B_i| / |S|
  CertReal partial;
  /// Contribution of return times above depth; exact when tail_certified.
  CertReal tail;
  bool tail_certified = false;
  CertReal total;
  int depth = 0;
  /// Distinct pending images used for the tail.
  std::size_t tail_classes = 0;
};

/// Integral of the return time against normalised Lebesgue measure on S.
/// When the pending images after `max_time` close up into a finite graph the
/// tail is summed exactly; otherwise tail_certified is false. Throws NotAGlst
/// on an incomplete branch.
ExpectedReturn expected_return_time(const BetaCtx& ctx, int first_digit, int max_time,
                                    std::size_t graph_cap = 512);

struct BirkhoffResult {
  mpq_class mean;
  long total_steps = 0;
  /// Steps taken before the orbit had to be rounded.
  long exact_steps = 0;
};

/// Mean of n successive return times along the orbit of x0 under
/// U_{beta,first_digit}. Once the exact representation outgrows
/// `exact_bits`, the orbit is continued as a pseudo-orbit rounded to
/// `round_bits` after every step.
BirkhoffResult birkhoff_average(const BetaCtx& ctx, int first_digit, const CertReal& x0, long n, long cap,
                                std::size_t exact_bits = 4096, mpfr_prec_t round_bits = 192);

struct LurothDigits {
  std::vector<long> digits;
  bool terminated = false;
};

/// Digits of x in (0, 1] under T(x) = n(n+1)x - n on (1/(n+1), 1/n], with
/// a = n + 1.
LurothDigits luroth_classic(const mpq_class& x, int n);
/// 1/a_1 + sum_k 1/(a_1(a_1-1) ... a_{k-1}(a_{k-1}-1) a_k)
mpq_class luroth_series(const std::vector<long>& digits);

}  // namespace betaret
