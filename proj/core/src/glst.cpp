#include "betaret/glst.hpp"

#include <algorithm>

#include "betaret/error.hpp"

namespace betaret {

std::string_view to_string(GlstReport::Verdict v) {
  switch (v) {
    case GlstReport::Verdict::ConsistentWithGLST: return "ConsistentWithGLST";
    case GlstReport::Verdict::Certified: return "GLST";
    case GlstReport::Verdict::NotGLST: return "NotGLST";
  }
  return "?";
}

GlstReport glst_verify(const BetaCtx& ctx, int first_digit, int max_time, std::size_t list_cap) {
  if (max_time < 1) throw Error(ErrorCode::InvalidArgument, "max_time must be at least 1");
  GlstReport rep;
  rep.first_digit = first_digit;
  BranchClassEnumerator en(ctx, first_digit);
  mpz_class count = 0;
  while (en.time() < max_time && rep.all_full) {
    for (BranchClass& c : en.next_level()) {
      if (!c.full && !c.degenerate && rep.all_full) {
        rep.all_full = false;
        rep.incomplete_witness = c.representative;
      }
      count += c.multiplicity;
      rep.classes.push_back(std::move(c));
    }
  }
  rep.depth = en.time();
  rep.length_gap = en.pending_mass();
  if (count <= list_cap) {
    rep.branches = enumerate_branches(ctx, first_digit, rep.depth);
    rep.branches_listed = true;
  }
  rep.membership = m_membership(ctx, max_time);
  if (!rep.all_full) {
    rep.verdict = GlstReport::Verdict::NotGLST;
  } else if (rep.membership.tag == MVerdict::Tag::Member &&
             rep.membership.witness == MVerdict::Witness::BoundaryHit) {
    rep.verdict = GlstReport::Verdict::Certified;
  }
  return rep;
}

namespace {

// Solves (I - P) y = rhs by Gaussian elimination; P is dense, column c holding
// the mass fractions leaving class c.
std::vector<CertReal> solve_i_minus_p(const BetaCtx& ctx, const std::vector<std::vector<CertReal>>& p,
                                      std::vector<CertReal> rhs) {
  const std::size_t n = rhs.size();
  std::vector<std::vector<CertReal>> a(n, std::vector<CertReal>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? CertReal::from_long(1) : CertReal()) - p[i][j];
  }
  const CertReal zero;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && ctx.cmp_certain(a[piv][col], zero, "pivot") == Ordering::Equal) ++piv;
    if (piv == n) throw Error(ErrorCode::Internal, "singular return-mass system");
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || ctx.cmp_certain(a[r][col], zero, "elimination") == Ordering::Equal) continue;
      const CertReal f = a[r][col] / a[col][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] = a[r][j] - f * a[col][j];
      rhs[r] = rhs[r] - f * rhs[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) rhs[i] = rhs[i] / a[i][i];
  return rhs;
}

}  // namespace

ExpectedReturn expected_return_time(const BetaCtx& ctx, int first_digit, int max_time, std::size_t graph_cap) {
  if (max_time < 1) throw Error(ErrorCode::InvalidArgument, "max_time must be at least 1");
  BranchClassEnumerator en(ctx, first_digit);
  ExpectedReturn out;
  CertReal weighted;
  while (en.time() < max_time) {
    for (const BranchClass& c : en.next_level()) {
      if (!c.full && !c.degenerate) {
        throw Error(ErrorCode::NotAGlst, "incomplete branch " + c.representative.word.to_string() + " at time " +
                                             std::to_string(c.return_time));
      }
      weighted = weighted + CertReal::from_long(c.return_time) * c.domain_mass;
    }
  }
  const CertReal s_len = ctx.switch_length();
  out.depth = en.time();
  out.partial = weighted / s_len;

  // Graph of pending images: node masses evolve as m <- P m, with fraction
  // q_c returning to S at each step.
  struct Node {
    Itv image;
    int digit;
  };
  std::vector<Node> nodes;
  std::vector<CertReal> mass;
  auto find_or_add = [&](const Itv& img, int digit) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].digit == digit && compare_itv(ctx, nodes[i].image, img) == 0) return i;
    }
    nodes.push_back({img, digit});
    mass.emplace_back();
    return nodes.size() - 1;
  };
  for (const PendingClass& c : en.pending()) {
    if (is_degenerate(ctx, c.image)) continue;
    const std::size_t i = find_or_add(c.image, c.next_digit);
    mass[i] = mass[i] + CertReal::from_rational(mpq_class(c.multiplicity)) * c.image.length() / en.scale();
  }

  std::vector<std::vector<std::pair<std::size_t, CertReal>>> edges;
  std::vector<CertReal> q;
  bool closed = true;
  try {
    for (std::size_t c = 0; c < nodes.size(); ++c) {
      if (nodes.size() > graph_cap) {
        closed = false;
        break;
      }
      const Node node = nodes[c];
      const PieceSplit sp = split_piece(ctx, PendingPiece{MapWord(), node.image, node.image, node.digit}, 1);
      const CertReal denom = ctx.beta() * node.image.length();
      q.push_back(CertReal());
      edges.emplace_back();
      if (sp.hit) {
        if (!sp.hit->full && !sp.hit->degenerate) {
          throw Error(ErrorCode::NotAGlst, "incomplete branch beyond time " + std::to_string(out.depth));
        }
        q.back() = sp.hit->image.length() / denom;
      }
      for (const auto* child : {&sp.left, &sp.right}) {
        if (!*child || is_degenerate(ctx, (*child)->image)) continue;
        const std::size_t j = find_or_add((*child)->image, (*child)->next_digit);
        edges[c].emplace_back(j, (*child)->image.length() / denom);
      }
    }
    if (closed) {
      const std::size_t n = nodes.size();
      std::vector<std::vector<CertReal>> p(n, std::vector<CertReal>(n));
      for (std::size_t c = 0; c < n; ++c) {
        for (const auto& [j, w] : edges[c]) p[j][c] = p[j][c] + w;
      }
      // sum_{s>=1} (N+s) q^T P^{s-1} m = N q^T u + q^T v, u = (I-P)^{-1} m, v = (I-P)^{-1} u.
      const std::vector<CertReal> u = solve_i_minus_p(ctx, p, mass);
      const std::vector<CertReal> v = solve_i_minus_p(ctx, p, u);
      CertReal qu;
      CertReal qv;
      for (std::size_t i = 0; i < n; ++i) {
        qu = qu + q[i] * u[i];
        qv = qv + q[i] * v[i];
      }
      out.tail = (CertReal::from_long(out.depth) * qu + qv) / s_len;
      out.tail_certified = true;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnresolvableAtPrecision && e.code() != ErrorCode::DivisionBySignUnknown) throw;
    closed = false;
  }
  out.tail_classes = nodes.size();
  if (!out.tail_certified) out.tail = CertReal();
  out.total = out.partial + out.tail;
  return out;
}

BirkhoffResult birkhoff_average(const BetaCtx& ctx, int first_digit, const CertReal& x0, long n, long cap,
                                std::size_t exact_bits, mpfr_prec_t round_bits) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one return");
  if (!in_switch(classify_point(ctx, x0))) throw Error(ErrorCode::InvalidArgument, "start point must lie in S");
  BirkhoffResult res;
  bool rounded = false;
  auto tame = [&](CertReal& x) {
    if (!rounded && x.exact() && x.exact()->bit_size() <= exact_bits) {
      ++res.exact_steps;
      return;
    }
    // Past this point the orbit is a pseudo-orbit of dyadic points; the
    // enclosure alone carries it, so arithmetic stays in MPFR.
    rounded = true;
    x = CertReal::from_enclosure(Enclosure::from_rational(x.refined(round_bits).enclosure().midpoint(), round_bits));
  };
  CertReal x = x0;
  mpz_class sum = 0;
  for (long i = 0; i < n; ++i) {
    long t = 1;
    x = apply_digit(ctx, first_digit, x);
    tame(x);
    for (;;) {
      const Region r = classify_point(ctx, x);
      if (in_switch(r)) break;
      if (r == Region::OutsideDomain) throw Error(ErrorCode::OutOfDomain, "pseudo-orbit left the domain");
      if (t >= cap) {
        throw ReturnCapError(static_cast<std::size_t>(i), t,
                             "return " + std::to_string(i + 1) + " not completed within " + std::to_string(cap) +
                                 " steps");
      }
      x = apply_digit(ctx, r == Region::LeftOfS ? 0 : 1, x);
      tame(x);
      ++t;
    }
    sum += t;
    res.total_steps += t;
  }
  res.mean = mpq_class(sum, n);
  res.mean.canonicalize();
  return res;
}

LurothDigits luroth_classic(const mpq_class& x0, int n) {
  if (sgn(x0) <= 0 || x0 > 1) throw Error(ErrorCode::InvalidArgument, "Luroth expansion needs x in (0, 1]");
  LurothDigits out;
  mpq_class x = x0;
  for (int k = 0; k < n; ++k) {
    if (sgn(x) == 0) {
      out.terminated = true;
      break;
    }
    // x in (1/(m+1), 1/m]  <=>  m = floor(1/x)
    mpz_class m;
    mpz_fdiv_q(m.get_mpz_t(), x.get_den_mpz_t(), x.get_num_mpz_t());
    if (!m.fits_slong_p()) throw Error(ErrorCode::CapExceeded, "Luroth digit does not fit in a long");
    out.digits.push_back(m.get_si() + 1);
    x = mpq_class(m * (m + 1)) * x - mpq_class(m);
    x.canonicalize();
  }
  return out;
}

mpq_class luroth_series(const std::vector<long>& digits) {
  mpq_class sum = 0;
  mpz_class prod = 1;
  for (long a : digits) {
    sum += mpq_class(1, 1) / mpq_class(prod * a);
    prod *= mpz_class(a) * (a - 1);
  }
  sum.canonicalize();
  return sum;
}

}  // namespace betaret
