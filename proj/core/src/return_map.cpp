#include "betaret/return_map.hpp"

#include <sstream>

#include "betaret/error.hpp"

namespace betaret {

MapWord::MapWord(std::vector<int> digits) : digits_(std::move(digits)) {
  for (int d : digits_) {
    if (d != 0 && d != 1) throw Error(ErrorCode::InvalidArgument, "map word digits must be 0 or 1");
  }
}

MapWord MapWord::then(int digit) const {
  std::vector<int> out = digits_;
  out.push_back(digit);
  return MapWord(std::move(out));
}

MapWord MapWord::complement() const {
  std::vector<int> out = digits_;
  for (int& d : out) d = 1 - d;
  return MapWord(std::move(out));
}

std::string MapWord::to_string() const {
  std::string s;
  for (int d : digits_) s.push_back(static_cast<char>('0' + d));
  return s;
}

CertReal MapWord::eval(const BetaCtx& ctx, const CertReal& x) const {
  CertReal y = x;
  for (int d : digits_) y = apply_digit(ctx, d, y);
  return y;
}

CertReal MapWord::eval_affine(const BetaCtx& ctx, const CertReal& x) const {
  // Horner on the offset: sum d_j beta^(n-j).
  CertReal offset;
  CertReal scale = CertReal::from_long(1);
  for (int d : digits_) {
    offset = offset * ctx.beta();
    if (d == 1) offset = offset + CertReal::from_long(1);
    scale = scale * ctx.beta();
  }
  return scale * x - offset;
}

CertReal MapWord::preimage(const BetaCtx& ctx, const CertReal& y) const {
  CertReal x = y;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) x = invert_digit(ctx, *it, x);
  return x;
}

std::string Itv::to_string(int digits) const {
  if (empty) return "{}";
  std::ostringstream os;
  os << (lo_closed ? '[' : '(') << lo.to_decimal(digits) << ", " << hi.to_decimal(digits)
     << (hi_closed ? ']' : ')');
  return os.str();
}

namespace {

struct Tracked {
  Itv itv;
  bool lo_from_a = true;
  bool hi_from_a = true;
};

Tracked intersect_tracked(const BetaCtx& ctx, const Itv& a, const Itv& b) {
  if (a.empty || b.empty) return {Itv::none()};
  Tracked t;
  switch (ctx.cmp_certain(a.lo, b.lo, "interval split")) {
    case Ordering::Greater:
      t.itv.lo = a.lo;
      t.itv.lo_closed = a.lo_closed;
      break;
    case Ordering::Less:
      t.itv.lo = b.lo;
      t.itv.lo_closed = b.lo_closed;
      t.lo_from_a = false;
      break;
    default:
      t.itv.lo = a.lo;
      t.itv.lo_closed = a.lo_closed && b.lo_closed;
  }
  switch (ctx.cmp_certain(a.hi, b.hi, "interval split")) {
    case Ordering::Less:
      t.itv.hi = a.hi;
      t.itv.hi_closed = a.hi_closed;
      break;
    case Ordering::Greater:
      t.itv.hi = b.hi;
      t.itv.hi_closed = b.hi_closed;
      t.hi_from_a = false;
      break;
    default:
      t.itv.hi = a.hi;
      t.itv.hi_closed = a.hi_closed && b.hi_closed;
  }
  const Ordering o = ctx.cmp_certain(t.itv.lo, t.itv.hi, "interval split");
  if (o == Ordering::Greater || (o == Ordering::Equal && !(t.itv.lo_closed && t.itv.hi_closed))) {
    return {Itv::none()};
  }
  return t;
}

Itv left_region(const BetaCtx& ctx) { return {CertReal(), ctx.switch_lo(), true, false, false}; }
Itv right_region(const BetaCtx& ctx) { return {ctx.switch_hi(), ctx.right_end(), false, true, false}; }

}  // namespace

Itv intersect(const BetaCtx& ctx, const Itv& a, const Itv& b) { return intersect_tracked(ctx, a, b).itv; }

bool is_degenerate(const BetaCtx& ctx, const Itv& a) {
  return !a.empty && ctx.cmp_certain(a.lo, a.hi, "degeneracy") == Ordering::Equal;
}

bool contains(const BetaCtx& ctx, const Itv& a, const CertReal& x) {
  if (a.empty) return false;
  const Ordering l = ctx.cmp_certain(x, a.lo, "membership");
  const Ordering h = ctx.cmp_certain(x, a.hi, "membership");
  const bool lo_ok = l == Ordering::Greater || (l == Ordering::Equal && a.lo_closed);
  const bool hi_ok = h == Ordering::Less || (h == Ordering::Equal && a.hi_closed);
  return lo_ok && hi_ok;
}

bool same_span(const BetaCtx& ctx, const Itv& a, const Itv& b) {
  if (a.empty || b.empty) return a.empty == b.empty;
  return ctx.equal(a.lo, b.lo) && ctx.equal(a.hi, b.hi);
}

Itv switch_region(const BetaCtx& ctx) { return Itv::closed(ctx.switch_lo(), ctx.switch_hi()); }

Itv reflect(const BetaCtx& ctx, const Itv& a) {
  if (a.empty) return a;
  return {reflect(ctx, a.hi), reflect(ctx, a.lo), a.hi_closed, a.lo_closed, false};
}

BranchEnumerator::BranchEnumerator(const BetaCtx& ctx, int first_digit, std::size_t piece_cap)
    : ctx_(&ctx), first_digit_(first_digit), piece_cap_(piece_cap) {
  if (first_digit != 0 && first_digit != 1) {
    throw Error(ErrorCode::InvalidArgument, "first digit must be 0 or 1");
  }
  const Itv s = switch_region(ctx);
  pending_.push_back({MapWord(), s, s, first_digit});
}

PieceSplit split_piece(const BetaCtx& ctx, const PendingPiece& p, int time) {
  const Itv s = switch_region(ctx);
  const MapWord word = p.word.then(p.next_digit);
  const Itv image{apply_digit(ctx, p.next_digit, p.image.lo), apply_digit(ctx, p.next_digit, p.image.hi),
                  p.image.lo_closed, p.image.hi_closed, false};

  auto pull = [&](const Tracked& t) {
    Itv dom = t.itv;
    dom.lo = t.lo_from_a ? p.domain.lo : word.preimage(ctx, t.itv.lo);
    dom.hi = t.hi_from_a ? p.domain.hi : word.preimage(ctx, t.itv.hi);
    // Endpoints inherited from the parent keep the parent's closure.
    if (t.lo_from_a) dom.lo_closed = t.itv.lo_closed && p.domain.lo_closed;
    if (t.hi_from_a) dom.hi_closed = t.itv.hi_closed && p.domain.hi_closed;
    return dom;
  };

  PieceSplit out;
  const Tracked l = intersect_tracked(ctx, image, left_region(ctx));
  const Tracked m = intersect_tracked(ctx, image, s);
  const Tracked r = intersect_tracked(ctx, image, right_region(ctx));
  if (!l.itv.empty) out.left = PendingPiece{word, pull(l), l.itv, 0};
  if (!m.itv.empty) {
    Branch b;
    b.word = word;
    b.domain = pull(m);
    b.return_time = time;
    b.image = m.itv;
    b.degenerate = is_degenerate(ctx, b.domain);
    b.full = !b.degenerate && same_span(ctx, b.image, s);
    out.hit = std::move(b);
  }
  if (!r.itv.empty) out.right = PendingPiece{word, pull(r), r.itv, 1};
  return out;
}

std::vector<Branch> BranchEnumerator::next_level() {
  ++time_;
  std::vector<Branch> closed;
  std::vector<PendingPiece> next;
  for (const PendingPiece& p : pending_) {
    PieceSplit sp = split_piece(*ctx_, p, time_);
    if (sp.left) next.push_back(std::move(*sp.left));
    if (sp.hit) closed.push_back(std::move(*sp.hit));
    if (sp.right) next.push_back(std::move(*sp.right));
  }
  if (next.size() > piece_cap_) {
    throw Error(ErrorCode::CapExceeded, "branch enumeration exceeded " + std::to_string(piece_cap_) +
                                            " pending pieces at time " + std::to_string(time_));
  }
  pending_ = std::move(next);
  return closed;
}

int compare_itv(const BetaCtx& ctx, const Itv& a, const Itv& b) {
  switch (ctx.cmp_certain(a.lo, b.lo, "interval order")) {
    case Ordering::Less: return -1;
    case Ordering::Greater: return 1;
    default: break;
  }
  if (a.lo_closed != b.lo_closed) return a.lo_closed ? -1 : 1;
  switch (ctx.cmp_certain(a.hi, b.hi, "interval order")) {
    case Ordering::Less: return -1;
    case Ordering::Greater: return 1;
    default: break;
  }
  if (a.hi_closed != b.hi_closed) return a.hi_closed ? 1 : -1;
  return 0;
}

namespace {

// Merges entries with equal keys; `key_cmp` orders, `absorb` folds the second into the first.
template <class T, class Cmp, class Absorb>
std::vector<T> merge_sorted(std::vector<T> v, Cmp key_cmp, Absorb absorb) {
  std::stable_sort(v.begin(), v.end(), [&](const T& a, const T& b) { return key_cmp(a, b) < 0; });
  std::vector<T> out;
  for (T& x : v) {
    if (!out.empty() && key_cmp(out.back(), x) == 0) {
      absorb(out.back(), x);
    } else {
      out.push_back(std::move(x));
    }
  }
  return out;
}

}  // namespace

BranchClassEnumerator::BranchClassEnumerator(const BetaCtx& ctx, int first_digit, std::size_t class_cap)
    : ctx_(&ctx), class_cap_(class_cap), scale_(CertReal::from_long(1)) {
  if (first_digit != 0 && first_digit != 1) {
    throw Error(ErrorCode::InvalidArgument, "first digit must be 0 or 1");
  }
  const Itv s = switch_region(ctx);
  pending_.push_back({s, first_digit, mpz_class(1), PendingPiece{MapWord(), s, s, first_digit}});
}

CertReal BranchClassEnumerator::pending_mass() const {
  CertReal total;
  for (const PendingClass& c : pending_) {
    total = total + CertReal::from_rational(mpq_class(c.multiplicity)) * c.image.length();
  }
  return total / scale_;
}

std::vector<BranchClass> BranchClassEnumerator::next_level() {
  const BetaCtx& ctx = *ctx_;
  ++time_;
  scale_ = scale_ * ctx.beta();
  std::vector<BranchClass> hits;
  std::vector<PendingClass> next;
  for (const PendingClass& c : pending_) {
    PieceSplit sp = split_piece(ctx, c.representative, time_);
    if (sp.left) next.push_back({sp.left->image, 0, c.multiplicity, std::move(*sp.left)});
    if (sp.right) next.push_back({sp.right->image, 1, c.multiplicity, std::move(*sp.right)});
    if (sp.hit) {
      BranchClass b;
      b.return_time = time_;
      b.image = sp.hit->image;
      b.multiplicity = c.multiplicity;
      b.full = sp.hit->full;
      b.degenerate = sp.hit->degenerate;
      b.representative = std::move(*sp.hit);
      hits.push_back(std::move(b));
    }
  }
  auto leftmost = [&](const Itv& a, const Itv& b) { return ctx.less(b.lo, a.lo); };
  pending_ = merge_sorted(
      std::move(next),
      [&](const PendingClass& a, const PendingClass& b) {
        if (a.next_digit != b.next_digit) return a.next_digit < b.next_digit ? -1 : 1;
        return compare_itv(ctx, a.image, b.image);
      },
      [&](PendingClass& into, PendingClass& from) {
        into.multiplicity += from.multiplicity;
        if (leftmost(into.representative.domain, from.representative.domain)) {
          into.representative = std::move(from.representative);
        }
      });
  if (pending_.size() > class_cap_) {
    throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(class_cap_) +
                                            " distinct pending images at time " + std::to_string(time_));
  }
  hits = merge_sorted(
      std::move(hits), [&](const BranchClass& a, const BranchClass& b) { return compare_itv(ctx, a.image, b.image); },
      [&](BranchClass& into, BranchClass& from) {
        into.multiplicity += from.multiplicity;
        if (leftmost(into.representative.domain, from.representative.domain)) {
          into.representative = std::move(from.representative);
        }
      });
  for (BranchClass& b : hits) {
    b.domain_mass = CertReal::from_rational(mpq_class(b.multiplicity)) * b.image.length() / scale_;
  }
  return hits;
}

ReturnRecord first_return(const BetaCtx& ctx, const OmegaSource& omega, std::size_t idx,
                          const CertReal& x, long cap) {
  if (!in_switch(classify_point(ctx, x))) {
    throw Error(ErrorCode::InvalidArgument, "first_return needs a start point in S");
  }
  ReturnRecord rec;
  rec.start = x;
  std::vector<int> word{omega.digit(idx)};
  rec.omega_digits_consumed = 1;
  CertReal y = apply_digit(ctx, word.back(), x);
  for (;;) {
    const Region reg = classify_point(ctx, y);
    if (in_switch(reg)) break;
    if (reg == Region::OutsideDomain) throw Error(ErrorCode::OutOfDomain, "orbit left the domain");
    if (static_cast<long>(word.size()) >= cap) {
      throw ReturnCapError(0, static_cast<long>(word.size()),
                           "no return to S within " + std::to_string(cap) + " steps");
    }
    const int d = reg == Region::LeftOfS ? 0 : 1;
    word.push_back(d);
    y = apply_digit(ctx, d, y);
  }
  rec.end = std::move(y);
  rec.time = static_cast<int>(word.size());
  rec.word = MapWord(std::move(word));
  return rec;
}

std::vector<ReturnRecord> return_sequence(const BetaCtx& ctx, const OmegaSource& omega,
                                          const CertReal& x, std::size_t count, long cap) {
  std::vector<ReturnRecord> out;
  out.reserve(count);
  std::size_t idx = 0;
  CertReal cur = x;
  for (std::size_t i = 0; i < count; ++i) {
    try {
      out.push_back(first_return(ctx, omega, idx, cur, cap));
    } catch (const ReturnCapError& e) {
      throw ReturnCapError(i, e.steps(),
                           "return " + std::to_string(i + 1) + " not completed within " +
                               std::to_string(cap) + " steps");
    }
    idx += static_cast<std::size_t>(out.back().omega_digits_consumed);
    cur = out.back().end;
  }
  return out;
}

std::vector<Branch> enumerate_branches(const BetaCtx& ctx, int first_digit, int max_time) {
  if (max_time < 1) throw Error(ErrorCode::InvalidArgument, "max_time must be at least 1");
  BranchEnumerator en(ctx, first_digit);
  std::vector<Branch> out;
  while (en.time() < max_time && !en.finished()) {
    for (Branch& b : en.next_level()) out.push_back(std::move(b));
  }
  return out;
}

int min_return_time(const BetaCtx& ctx, int time_cap) {
  BranchClassEnumerator zero(ctx, 0);
  BranchClassEnumerator one(ctx, 1);
  while (zero.time() < time_cap) {
    const bool hit0 = !zero.next_level().empty();
    const bool hit1 = !one.next_level().empty();
    if (hit0 || hit1) return zero.time();
  }
  throw Error(ErrorCode::CapExceeded, "no return found within time " + std::to_string(time_cap));
}

std::vector<GraphSegment> graph_samples(const BetaCtx& ctx, int first_digit, int max_time,
                                        int pts_per_branch) {
  if (pts_per_branch < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 points per branch");
  const std::vector<Branch> branches = enumerate_branches(ctx, first_digit, max_time);
  std::vector<GraphSegment> out;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const Branch& b = branches[i];
    GraphSegment seg;
    seg.branch_index = i;
    seg.return_time = b.return_time;
    const CertReal width = b.domain.hi - b.domain.lo;
    for (int j = 0; j < pts_per_branch; ++j) {
      mpq_class t(j, pts_per_branch - 1);
      t.canonicalize();
      const CertReal x = j == pts_per_branch - 1 ? b.domain.hi : b.domain.lo + width * CertReal::from_rational(t);
      seg.points.emplace_back(x, b.word.eval_affine(ctx, x));
    }
    out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace betaret
