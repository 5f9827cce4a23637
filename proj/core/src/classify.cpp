#include "betaret/classify.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "betaret/error.hpp"

namespace betaret {

std::string_view to_string(MarkerKind kind) {
  switch (kind) {
    case MarkerKind::Alpha: return "alpha";
    case MarkerKind::Gamma: return "gamma";
    case MarkerKind::Eta: return "eta";
  }
  return "?";
}

Polynomial marker_polynomial(MarkerKind kind, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "marker index must be at least 1");
  std::vector<long> c(static_cast<std::size_t>(k) + 2, 0);
  switch (kind) {
    case MarkerKind::Alpha:
      c[k + 1] = 1;
      c[k] += -2;
      c[1] += 1;
      c[0] += -1;
      break;
    case MarkerKind::Gamma:
      c[k + 1] = 1;
      for (int i = 0; i <= k; ++i) c[i] = -1;
      break;
    case MarkerKind::Eta:
      c[k + 1] = 2;
      c[k] = -4;
      c[0] += 1;
      break;
  }
  return Polynomial::from_integers(c);
}

CertReal marker(MarkerKind kind, int k, mpfr_prec_t bits) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, CertReal> cache;
  const auto key = std::make_pair(static_cast<int>(kind), k);
  CertReal root;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, isolate_root(marker_polynomial(kind, k), 1, 2, kMinPrecision)).first;
    }
    root = it->second;
  }
  return root.refined(std::max(bits, kMinPrecision) + 8);
}

std::string Regime::to_string() const {
  switch (tag) {
    case Tag::BelowOrAtGolden: return "BelowOrAtGolden";
    case Tag::ThmFree: return "ThmFree(" + std::to_string(k) + ")";
    case Tag::ThmExists: return "ThmExists(" + std::to_string(k) + ")";
    case Tag::Gap: return "Gap(" + std::to_string(k) + ")";
  }
  return "?";
}

Regime classify_beta(const CertReal& beta, int k_max, mpfr_prec_t max_bits) {
  auto at_most = [&](const CertReal& m, const char* what, int k) {
    const Ordering o = compare(beta, m, max_bits);
    if (o == Ordering::Unknown) {
      throw Error(ErrorCode::UnresolvableAtPrecision,
                  std::string("cannot separate beta from ") + what + "_" + std::to_string(k));
    }
    return o != Ordering::Greater;
  };
  const Ordering above_one = compare(beta, CertReal::from_long(1), max_bits);
  const Ordering below_two = compare(beta, CertReal::from_long(2), max_bits);
  if (above_one == Ordering::Unknown || below_two == Ordering::Unknown) {
    throw Error(ErrorCode::UnresolvableAtPrecision, "cannot place beta against 1 and 2");
  }
  if (above_one != Ordering::Greater || below_two != Ordering::Less) {
    throw Error(ErrorCode::InvalidArgument, "beta must lie in (1, 2)");
  }
  if (at_most(marker(MarkerKind::Gamma, 1), "gamma", 1)) return {Regime::Tag::BelowOrAtGolden, 0};
  for (int k = 1; k <= k_max; ++k) {
    // beta > alpha_k is known here (alpha_1 = gamma_1).
    if (k >= 2 && at_most(marker(MarkerKind::Gamma, k), "gamma", k)) return {Regime::Tag::ThmFree, k};
    if (at_most(marker(MarkerKind::Eta, k), "eta", k)) return {Regime::Tag::ThmExists, k};
    if (at_most(marker(MarkerKind::Alpha, k + 1), "alpha", k + 1)) return {Regime::Tag::Gap, k};
  }
  throw Error(ErrorCode::KMaxExceeded, "beta lies beyond alpha_" + std::to_string(k_max + 1));
}

namespace {

// (T_1^j o T_0)(1/beta) for j = 0..n.
std::vector<CertReal> hop_orbit(const BetaCtx& ctx, int n) {
  std::vector<CertReal> out{apply_digit(ctx, 0, ctx.inv_beta())};
  for (int j = 0; j < n; ++j) out.push_back(apply_digit(ctx, 1, out.back()));
  return out;
}

}  // namespace

HopCheck check_hop(const BetaCtx& ctx, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const auto orbit = hop_orbit(ctx, k);
  HopCheck h;
  h.jump = ctx.cmp_certain(orbit[k - 1], ctx.switch_hi(), "hop condition") == Ordering::Greater;
  const Ordering c = ctx.cmp_certain(orbit[k], ctx.inv_beta(), "closure condition");
  h.closure = c != Ordering::Greater;
  h.closure_equality = c == Ordering::Equal;
  return h;
}

bool check_crossover(const BetaCtx& ctx, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const CertReal y = hop_orbit(ctx, k)[k];
  const bool lower = ctx.cmp_certain(y, ctx.inv_beta(), "crossover") == Ordering::Greater &&
                     ctx.cmp_certain(y, ctx.switch_mid(), "crossover") != Ordering::Greater;
  CertReal z = apply_digit(ctx, 1, ctx.switch_hi());
  for (int j = 0; j < k; ++j) z = apply_digit(ctx, 0, z);
  const bool upper = ctx.cmp_certain(z, ctx.switch_mid(), "crossover") != Ordering::Less &&
                     ctx.cmp_certain(z, ctx.switch_hi(), "crossover") == Ordering::Less;
  if (lower != upper) throw Error(ErrorCode::Internal, "crossover conditions disagree under reflection");
  return lower;
}

std::string MVerdict::to_string() const {
  std::ostringstream os;
  std::string w;
  for (int d : word) w.push_back(static_cast<char>('0' + d));
  switch (tag) {
    case Tag::Member:
      if (witness == Witness::BoundaryHit) {
        os << "Member(BoundaryHit, word=" << (w.empty() ? "-" : w) << ", " << betaret::to_string(landed) << ")";
      } else {
        os << "Member(UnivoquePersists, depth=" << depth << ")";
      }
      break;
    case Tag::NonMember: os << "NonMember(depth=" << depth << ", word=" << w << ")"; break;
    case Tag::Unknown: os << "Unknown(depth=" << depth << ")"; break;
  }
  return os.str();
}

MVerdict m_membership(const BetaCtx& ctx, long max_steps) {
  MVerdict v;
  CertReal x = apply_digit(ctx, 0, ctx.inv_beta());
  CertReal xr = reflect(ctx, x);
  for (long step = 0;; ++step) {
    Region r;
    Region rr;
    try {
      r = classify_point(ctx, x);
      rr = classify_point(ctx, xr);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnresolvableAtPrecision) throw;
      v.tag = MVerdict::Tag::Unknown;
      v.depth = step;
      return v;
    }
    auto mirrored = [](Region a) {
      switch (a) {
        case Region::LeftOfS: return Region::RightOfS;
        case Region::RightOfS: return Region::LeftOfS;
        case Region::SwitchBoundaryLo: return Region::SwitchBoundaryHi;
        case Region::SwitchBoundaryHi: return Region::SwitchBoundaryLo;
        default: return a;
      }
    };
    if (rr != mirrored(r)) {
      throw Error(ErrorCode::Internal, "reflected orbit disagrees at step " + std::to_string(step));
    }
    v.depth = step;
    if (r == Region::InteriorS) {
      v.tag = MVerdict::Tag::NonMember;
      return v;
    }
    if (r == Region::SwitchBoundaryLo || r == Region::SwitchBoundaryHi) {
      v.tag = MVerdict::Tag::Member;
      v.witness = MVerdict::Witness::BoundaryHit;
      v.landed = r;
      return v;
    }
    if (r == Region::OutsideDomain) throw Error(ErrorCode::Internal, "forced orbit left the domain");
    if (step >= max_steps) {
      v.tag = MVerdict::Tag::Member;
      v.witness = MVerdict::Witness::UnivoquePersists;
      return v;
    }
    const int d = r == Region::LeftOfS ? 0 : 1;
    v.word.push_back(d);
    x = apply_digit(ctx, d, x);
    xr = apply_digit(ctx, 1 - d, xr);
  }
}

}  // namespace betaret
