#include "betaret/realizability.hpp"

#include <algorithm>

#include "betaret/error.hpp"

namespace betaret {

BranchTable::BranchTable(const BetaCtx& ctx, int time_cap)
    : ctx_(&ctx), time_cap_(time_cap), enum_{BranchEnumerator(ctx, 0), BranchEnumerator(ctx, 1)} {}

const std::vector<Branch>& BranchTable::at(int digit, int time) {
  if (digit != 0 && digit != 1) throw Error(ErrorCode::InvalidArgument, "digit must be 0 or 1");
  if (time < 1) throw Error(ErrorCode::InvalidArgument, "return times start at 1");
  if (time > time_cap_) {
    throw Error(ErrorCode::CapExceeded,
                "return time " + std::to_string(time) + " above the cap " + std::to_string(time_cap_));
  }
  auto& levels = by_time_[digit];
  while (static_cast<int>(levels.size()) < time) {
    if (enum_[digit].finished()) {
      levels.emplace_back();
    } else {
      levels.push_back(enum_[digit].next_level());
    }
  }
  return levels[static_cast<std::size_t>(time - 1)];
}

Leaf root_leaf(const BetaCtx& ctx) {
  const Itv s = switch_region(ctx);
  return {s, MapWord(), s, {}, {}, CertReal::from_long(1)};
}

namespace {

CertReal beta_power(const BetaCtx& ctx, std::size_t n) {
  CertReal p = CertReal::from_long(1);
  for (std::size_t i = 0; i < n; ++i) p = p * ctx.beta();
  return p;
}

// Child of `leaf` through branch `b`, or nothing when the image misses the branch.
std::optional<Leaf> child(const BetaCtx& ctx, const Leaf& leaf, const Branch& b, const CertReal& branch_slope,
                          int digit, int time) {
  const Itv cut = intersect(ctx, leaf.image, b.domain);
  if (cut.empty) return std::nullopt;
  Leaf next;
  // the composed map is affine on the leaf domain, so pull the cut back through the slope
  next.domain = cut;
  next.domain.lo = leaf.domain.lo + (cut.lo - leaf.image.lo) / leaf.slope;
  next.domain.hi = leaf.domain.lo + (cut.hi - leaf.image.lo) / leaf.slope;
  next.image = {b.word.eval(ctx, cut.lo), b.word.eval(ctx, cut.hi), cut.lo_closed, cut.hi_closed, false};
  std::vector<int> digits = leaf.composed.digits();
  digits.insert(digits.end(), b.word.digits().begin(), b.word.digits().end());
  next.composed = MapWord(std::move(digits));
  next.omega_prefix = leaf.omega_prefix;
  next.omega_prefix.push_back(digit);
  next.times = leaf.times;
  next.times.push_back(time);
  next.slope = leaf.slope * branch_slope;
  return next;
}

bool left_of(const BetaCtx& ctx, const Leaf& a, const Leaf& b) {
  const Ordering o = ctx.cmp(a.domain.lo, b.domain.lo);
  return o == Ordering::Less;
}

}  // namespace

std::vector<Leaf> extend_leaves(const BetaCtx& ctx, BranchTable& table, const std::vector<Leaf>& leaves,
                                int digit, int time) {
  const std::vector<Branch>& branches = table.at(digit, time);
  const CertReal slope = beta_power(ctx, static_cast<std::size_t>(time));
  std::vector<Leaf> out;
  for (const Leaf& leaf : leaves) {
    for (const Branch& b : branches) {
      if (auto c = child(ctx, leaf, b, slope, digit, time)) out.push_back(std::move(*c));
    }
  }
  return out;
}

std::vector<LeafClass> extend_classes(const BetaCtx& ctx, BranchTable& table, const std::vector<LeafClass>& classes,
                                      const std::vector<int>& digits, int time) {
  const CertReal slope = beta_power(ctx, static_cast<std::size_t>(time));
  std::vector<LeafClass> out;
  for (int digit : digits) {
    const std::vector<Branch>& branches = table.at(digit, time);
    for (const LeafClass& c : classes) {
      for (const Branch& b : branches) {
        if (auto l = child(ctx, c.representative, b, slope, digit, time)) {
          Itv img = l->image;
          out.push_back({std::move(img), c.multiplicity, std::move(*l)});
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](const LeafClass& a, const LeafClass& b) { return compare_itv(ctx, a.image, b.image) < 0; });
  std::vector<LeafClass> merged;
  for (LeafClass& c : out) {
    if (!merged.empty() && compare_itv(ctx, merged.back().image, c.image) == 0) {
      merged.back().multiplicity += c.multiplicity;
      if (left_of(ctx, c.representative, merged.back().representative)) {
        merged.back().representative = std::move(c.representative);
      }
    } else {
      merged.push_back(std::move(c));
    }
  }
  return merged;
}

namespace {

std::vector<Itv> sorted_by_lo(const BetaCtx& ctx, std::vector<Itv> v) {
  std::stable_sort(v.begin(), v.end(), [&](const Itv& a, const Itv& b) { return ctx.less(a.lo, b.lo); });
  return v;
}

}  // namespace

std::vector<Itv> union_of_domains(const BetaCtx& ctx, const std::vector<Leaf>& leaves) {
  std::vector<Itv> doms;
  for (const Leaf& l : leaves) doms.push_back(l.domain);
  doms = sorted_by_lo(ctx, std::move(doms));
  std::vector<Itv> out;
  for (Itv& d : doms) {
    if (!out.empty()) {
      Itv& cur = out.back();
      const Ordering o = ctx.cmp_certain(d.lo, cur.hi, "union");
      if (o == Ordering::Less || (o == Ordering::Equal && (cur.hi_closed || d.lo_closed))) {
        const Ordering h = ctx.cmp_certain(d.hi, cur.hi, "union");
        if (h == Ordering::Greater) {
          cur.hi = d.hi;
          cur.hi_closed = d.hi_closed;
        } else if (h == Ordering::Equal) {
          cur.hi_closed = cur.hi_closed || d.hi_closed;
        }
        continue;
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

bool images_cover_switch(const BetaCtx& ctx, const std::vector<LeafClass>& classes) {
  std::vector<Itv> imgs;
  for (const LeafClass& c : classes) imgs.push_back(c.image);
  imgs = sorted_by_lo(ctx, std::move(imgs));
  CertReal reach = ctx.switch_lo();
  for (const Itv& i : imgs) {
    if (ctx.less(reach, i.lo)) return false;
    if (ctx.less(reach, i.hi)) reach = i.hi;
  }
  return ctx.less_equal(ctx.switch_hi(), reach);
}

namespace {

void check_times(const std::vector<int>& times, const RealizeOptions& opts) {
  if (static_cast<int>(times.size()) > opts.depth_cap) {
    throw Error(ErrorCode::CapExceeded, "prefix length " + std::to_string(times.size()) +
                                            " above the depth cap " + std::to_string(opts.depth_cap));
  }
  for (int t : times) {
    if (t < 1) throw Error(ErrorCode::InvalidArgument, "return times start at 1");
  }
}

void check_class_cap(const std::vector<LeafClass>& classes, const RealizeOptions& opts) {
  if (classes.size() > opts.class_cap) {
    throw Error(ErrorCode::CapExceeded, "more than " + std::to_string(opts.class_cap) + " distinct leaf images");
  }
}

mpz_class total(const std::vector<LeafClass>& classes) {
  mpz_class n = 0;
  for (const LeafClass& c : classes) n += c.multiplicity;
  return n;
}

std::optional<RealizationWitness> witness_of(const std::vector<LeafClass>& classes,
                                             const std::vector<Leaf>& leaves, bool listed) {
  if (classes.empty()) return std::nullopt;
  const Leaf& leaf = listed && !leaves.empty() ? leaves.front() : classes.front().representative;
  CertReal mid = (leaf.domain.lo + leaf.domain.hi) / CertReal::from_long(2);
  return RealizationWitness{std::move(mid), leaf.omega_prefix};
}

// Advances the concrete list alongside the classes while it stays under the leaf cap.
void advance_leaves(const BetaCtx& ctx, BranchTable& table, std::vector<Leaf>& leaves, bool& listed,
                    const mpz_class& next_total, const std::vector<int>& digits, int time,
                    const RealizeOptions& opts) {
  if (!listed) return;
  if (next_total > mpz_class(static_cast<unsigned long>(opts.leaf_cap))) {
    listed = false;
    leaves.clear();
    return;
  }
  std::vector<Leaf> next;
  for (int d : digits) {
    std::vector<Leaf> part = extend_leaves(ctx, table, leaves, d, time);
    next.insert(next.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  leaves = std::move(next);
}

}  // namespace

const std::vector<Itv>& FixedOmegaResult::components() const {
  if (!listed) throw Error(ErrorCode::CapExceeded, "too many components to list");
  return levels.back();
}

FixedOmegaResult realize_fixed_omega(const BetaCtx& ctx, const std::vector<int>& omega_prefix,
                                     const std::vector<int>& times, const RealizeOptions& opts) {
  if (omega_prefix.size() != times.size()) {
    throw Error(ErrorCode::InvalidArgument, "omega prefix and times differ in length");
  }
  check_times(times, opts);
  BranchTable table(ctx, opts.time_cap);
  FixedOmegaResult res;
  Leaf root = root_leaf(ctx);
  std::vector<Leaf> leaves{root};
  Itv s = root.image;
  res.classes = {LeafClass{std::move(s), mpz_class(1), std::move(root)}};
  res.levels.push_back(union_of_domains(ctx, leaves));
  res.leaf_count_per_level.push_back(1);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const std::vector<int> digits{omega_prefix[i]};
    res.classes = extend_classes(ctx, table, res.classes, digits, times[i]);
    check_class_cap(res.classes, opts);
    const mpz_class n = total(res.classes);
    advance_leaves(ctx, table, leaves, res.listed, n, digits, times[i], opts);
    res.leaf_count_per_level.push_back(n);
    if (res.listed) res.levels.push_back(union_of_domains(ctx, leaves));
  }
  res.witness = witness_of(res.classes, leaves, res.listed);
  return res;
}

ExistsResult realize_exists_omega(const BetaCtx& ctx, const std::vector<int>& times, const RealizeOptions& opts) {
  check_times(times, opts);
  BranchTable table(ctx, opts.time_cap);
  ExistsResult res;
  RealizationTree& tree = res.tree;
  Leaf root = root_leaf(ctx);
  tree.leaves = {root};
  Itv s = root.image;
  tree.classes = {LeafClass{std::move(s), mpz_class(1), std::move(root)}};
  tree.covering = true;
  const std::vector<int> both{0, 1};
  for (int t : times) {
    tree.classes = extend_classes(ctx, table, tree.classes, both, t);
    check_class_cap(tree.classes, opts);
    const mpz_class n = total(tree.classes);
    advance_leaves(ctx, table, tree.leaves, tree.listed, n, both, t, opts);
    ++tree.level;
    tree.leaf_count_per_level.push_back(n);
    tree.covering = !tree.classes.empty() && images_cover_switch(ctx, tree.classes);
    tree.covering_per_level.push_back(tree.covering);
    if (tree.classes.empty()) break;
  }
  res.witness = witness_of(tree.classes, tree.leaves, tree.listed);
  if (!tree.listed) {
    for (const LeafClass& c : tree.classes) tree.leaves.push_back(c.representative);
  }
  return res;
}

ImpossibilityResult certify_impossible_constant(const BetaCtx& ctx, int j, int omega_digit, int cap,
                                                const RealizeOptions& opts) {
  if (j < 1) throw Error(ErrorCode::InvalidArgument, "return time must be at least 1");
  BranchTable table(ctx, std::max(opts.time_cap, j));
  Leaf root = root_leaf(ctx);
  Itv s = root.image;
  std::vector<LeafClass> classes{LeafClass{std::move(s), mpz_class(1), std::move(root)}};
  for (int d = 1; d <= cap; ++d) {
    classes = extend_classes(ctx, table, classes, {omega_digit}, j);
    check_class_cap(classes, opts);
    if (classes.empty()) return {true, d};
  }
  return {false, cap};
}

}  // namespace betaret
