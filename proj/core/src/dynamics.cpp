#include "betaret/dynamics.hpp"

#include <sstream>

#include "betaret/error.hpp"

namespace betaret {

namespace {

const CertReal& one() {
  static const CertReal v = CertReal::from_long(1);
  return v;
}

const CertReal& two() {
  static const CertReal v = CertReal::from_long(2);
  return v;
}

}  // namespace

BetaCtx::BetaCtx(CertReal beta, DynamicsOptions options)
    : options_(options), beta_(beta.refined(options.working_bits)) {
  if (compare(beta_, one(), options_.max_bits) != Ordering::Greater ||
      compare(beta_, two(), options_.max_bits) != Ordering::Less) {
    throw Error(ErrorCode::InvalidArgument, "beta must lie in (1, 2), got " + beta_.to_decimal(20));
  }
  inv_beta_ = one() / beta_;
  right_end_ = one() / (beta_ - one());
  switch_hi_ = inv_beta_ * right_end_;
  switch_mid_ = right_end_ / two();
}

Ordering BetaCtx::cmp_certain(const CertReal& a, const CertReal& b, std::string_view what) const {
  const Ordering o = cmp(a, b);
  if (o == Ordering::Unknown) {
    throw Error(ErrorCode::UnresolvableAtPrecision,
                std::string(what) + ": cannot order " + a.to_decimal(20) + " and " + b.to_decimal(20) +
                    " within " + std::to_string(options_.max_bits) + " bits");
  }
  return o;
}

bool BetaCtx::less(const CertReal& a, const CertReal& b) const {
  return cmp_certain(a, b, "comparison") == Ordering::Less;
}

bool BetaCtx::less_equal(const CertReal& a, const CertReal& b) const {
  return cmp_certain(a, b, "comparison") != Ordering::Greater;
}

bool BetaCtx::equal(const CertReal& a, const CertReal& b) const {
  return cmp_certain(a, b, "comparison") == Ordering::Equal;
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::LeftOfS: return "LeftOfS";
    case Region::InteriorS: return "InteriorS";
    case Region::SwitchBoundaryLo: return "SwitchBoundaryLo";
    case Region::SwitchBoundaryHi: return "SwitchBoundaryHi";
    case Region::RightOfS: return "RightOfS";
    case Region::OutsideDomain: return "OutsideDomain";
  }
  return "?";
}

std::string_view to_string(OrbitStop s) {
  switch (s) {
    case OrbitStop::HitInterior: return "HitInterior";
    case OrbitStop::HitBoundaryLo: return "HitBoundaryLo";
    case OrbitStop::HitBoundaryHi: return "HitBoundaryHi";
    case OrbitStop::Escaped: return "Escaped";
    case OrbitStop::StepCapReached: return "StepCapReached";
  }
  return "?";
}

OmegaSource OmegaSource::all_zeros() { return OmegaSource(Kind::AllZeros, {}, 0); }
OmegaSource OmegaSource::all_ones() { return OmegaSource(Kind::AllOnes, {}, 1); }

namespace {

void check_digits(const std::vector<int>& word) {
  for (int d : word) {
    if (d != 0 && d != 1) throw Error(ErrorCode::InvalidArgument, "omega digits must be 0 or 1");
  }
}

}  // namespace

OmegaSource OmegaSource::fixed_word(std::vector<int> word, int tail) {
  check_digits(word);
  check_digits({tail});
  return OmegaSource(Kind::FixedWord, std::move(word), tail);
}

OmegaSource OmegaSource::periodic(std::vector<int> word) {
  if (word.empty()) throw Error(ErrorCode::InvalidArgument, "periodic omega needs a nonempty word");
  check_digits(word);
  return OmegaSource(Kind::Periodic, std::move(word), 0);
}

OmegaSource OmegaSource::stream(std::function<int(std::size_t)> digits, std::string label) {
  OmegaSource out(Kind::Stream, {}, 0);
  out.stream_ = std::make_shared<const std::function<int(std::size_t)>>(std::move(digits));
  out.label_ = std::move(label);
  return out;
}

OmegaSource OmegaSource::random(std::uint64_t seed) {
  return stream(
      [seed](std::size_t idx) {
        // splitmix64 finaliser over (seed, idx)
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(idx) + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<int>(z >> 63);
      },
      "random(seed=" + std::to_string(seed) + ")");
}

int OmegaSource::digit(std::size_t index) const {
  switch (kind_) {
    case Kind::AllZeros: return 0;
    case Kind::AllOnes: return 1;
    case Kind::FixedWord: return index < word_.size() ? word_[index] : tail_;
    case Kind::Periodic: return word_[index % word_.size()];
    case Kind::Stream: {
      const int d = (*stream_)(index);
      if (d != 0 && d != 1) throw Error(ErrorCode::InvalidArgument, "stream produced a non-binary digit");
      return d;
    }
  }
  return 0;
}

std::string OmegaSource::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::AllZeros: return "(0)^inf";
    case Kind::AllOnes: return "(1)^inf";
    case Kind::FixedWord:
      for (int d : word_) os << d;
      os << "(" << tail_ << ")^inf";
      return os.str();
    case Kind::Periodic:
      os << "(";
      for (int d : word_) os << d;
      os << ")^inf";
      return os.str();
    case Kind::Stream: return label_;
  }
  return "?";
}

CertReal apply_digit(const BetaCtx& ctx, int digit, const CertReal& x, bool check_domain) {
  CertReal y = ctx.beta() * x;
  if (digit == 1) y = y - one();
  if (check_domain) {
    if (ctx.cmp(y, CertReal()) == Ordering::Less || ctx.cmp(y, ctx.right_end()) == Ordering::Greater) {
      throw Error(ErrorCode::OutOfDomain, "T_" + std::to_string(digit) + " leaves [0, 1/(beta-1)]");
    }
  }
  return y;
}

CertReal invert_digit(const BetaCtx& ctx, int digit, const CertReal& y) {
  return digit == 1 ? (y + one()) * ctx.inv_beta() : y * ctx.inv_beta();
}

Region classify_point(const BetaCtx& ctx, const CertReal& x) {
  const Ordering vs_lo = ctx.cmp_certain(x, ctx.switch_lo(), "classify_point");
  if (vs_lo == Ordering::Equal) return Region::SwitchBoundaryLo;
  if (vs_lo == Ordering::Less) {
    return ctx.cmp_certain(x, CertReal(), "classify_point") == Ordering::Less ? Region::OutsideDomain
                                                                               : Region::LeftOfS;
  }
  const Ordering vs_hi = ctx.cmp_certain(x, ctx.switch_hi(), "classify_point");
  if (vs_hi == Ordering::Less) return Region::InteriorS;
  if (vs_hi == Ordering::Equal) return Region::SwitchBoundaryHi;
  return ctx.cmp_certain(x, ctx.right_end(), "classify_point") == Ordering::Greater
             ? Region::OutsideDomain
             : Region::RightOfS;
}

KStep kbeta_step(const BetaCtx& ctx, const OmegaSource& omega, std::size_t idx, const CertReal& x) {
  const Region r = classify_point(ctx, x);
  switch (r) {
    case Region::OutsideDomain:
      throw Error(ErrorCode::OutOfDomain, "point outside [0, 1/(beta-1)]");
    case Region::LeftOfS: return {apply_digit(ctx, 0, x), false, 0};
    case Region::RightOfS: return {apply_digit(ctx, 1, x), false, 1};
    default: {
      const int d = omega.digit(idx);
      return {apply_digit(ctx, d, x), true, d};
    }
  }
}

CertReal greedy_step(const BetaCtx& ctx, const CertReal& x) {
  const Region r = classify_point(ctx, x);
  if (r == Region::OutsideDomain) throw Error(ErrorCode::OutOfDomain, "point outside [0, 1/(beta-1)]");
  return apply_digit(ctx, r == Region::LeftOfS ? 0 : 1, x);
}

CertReal lazy_step(const BetaCtx& ctx, const CertReal& x) {
  const Region r = classify_point(ctx, x);
  if (r == Region::OutsideDomain) throw Error(ErrorCode::OutOfDomain, "point outside [0, 1/(beta-1)]");
  const bool use_one = r == Region::SwitchBoundaryHi || r == Region::RightOfS;
  return apply_digit(ctx, use_one ? 1 : 0, x);
}

CertReal reflect(const BetaCtx& ctx, const CertReal& x) { return ctx.right_end() - x; }

ForcedOrbit forced_orbit(const BetaCtx& ctx, const CertReal& x0, long max_steps) {
  ForcedOrbit out;
  out.trajectory.push_back(x0);
  for (long step = 0;; ++step) {
    const CertReal& x = out.trajectory.back();
    const Region r = classify_point(ctx, x);
    switch (r) {
      case Region::InteriorS: out.stop = OrbitStop::HitInterior; return out;
      case Region::SwitchBoundaryLo: out.stop = OrbitStop::HitBoundaryLo; return out;
      case Region::SwitchBoundaryHi: out.stop = OrbitStop::HitBoundaryHi; return out;
      case Region::OutsideDomain: out.stop = OrbitStop::Escaped; return out;
      default: break;
    }
    if (step >= max_steps) {
      out.stop = OrbitStop::StepCapReached;
      return out;
    }
    const int d = (r == Region::LeftOfS) ? 0 : 1;
    out.word.push_back(d);
    CertReal next = apply_digit(ctx, d, x);
    out.trajectory.push_back(std::move(next));
  }
}

}  // namespace betaret
