#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "betaret/beta_spec.hpp"
#include "betaret/classify.hpp"
#include "betaret/error.hpp"
#include "betaret/glst.hpp"
#include "betaret/realizability.hpp"
#include "betaret/return_map.hpp"

namespace betaret::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr int kDigits = 20;

struct Options {
  std::string beta;
  std::string beta_pos;
  std::string poly;
  std::string bracket;
  std::string grid;
  int digit = 0;
  int depth = -1;
  long bits = kDefaultMaxBits;
  std::uint64_t seed = 1;
  std::string format;
  bool exact = false;
  int threads = 0;

  // command specific
  int k_max = 5;
  int pts = 2;
  std::string times;
  std::string omega;
  long samples = 0;
  std::string x0;
  std::string x;
};

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Parse: return kUsage;
    case ErrorCode::UnresolvableAtPrecision:
    case ErrorCode::DivisionBySignUnknown: return kPrecision;
    case ErrorCode::NoReturnWithinCap:
    case ErrorCode::CapExceeded:
    case ErrorCode::KMaxExceeded: return kCap;
    default: return kOther;
  }
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string dec(const CertReal& x, int digits = kDigits) { return x.to_decimal(digits); }

json number(const CertReal& x, const Options& o, int digits = kDigits) {
  if (!o.exact) return dec(x, digits);
  json j;
  j["decimal"] = dec(x, digits);
  j["enclosure"] = x.refined(128).enclosure().to_dyadic_string();
  return j;
}

json itv_json(const Itv& i, const Options& o) {
  if (i.empty) return nullptr;
  json j;
  j["lo"] = number(i.lo, o);
  j["hi"] = number(i.hi, o);
  j["lo_closed"] = i.lo_closed;
  j["hi_closed"] = i.hi_closed;
  return j;
}

std::string digits_string(const std::vector<int>& w) {
  std::string s;
  for (int d : w) s.push_back(static_cast<char>('0' + d));
  return s;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad entry '") + item + "' in " + what);
    }
  }
  return out;
}

std::vector<int> parse_omega(const std::string& text) {
  std::vector<int> out;
  for (char c : text) {
    if (c == ',' || c == ' ') continue;
    if (c != '0' && c != '1') throw UsageError("omega digits must be 0 or 1");
    out.push_back(c - '0');
  }
  return out;
}

std::vector<BetaSpec> resolve_bases(const Options& o) {
  std::vector<BetaSpec> out;
  if (!o.grid.empty()) {
    const auto colon = std::count(o.grid.begin(), o.grid.end(), ':');
    if (colon == 2) {
      std::stringstream ss(o.grid);
      std::string a, b, c;
      std::getline(ss, a, ':');
      std::getline(ss, b, ':');
      std::getline(ss, c, ':');
      const mpq_class lo = *CertReal::parse_rational(a).as_rational();
      const mpq_class hi = *CertReal::parse_rational(b).as_rational();
      const mpq_class step = *CertReal::parse_rational(c).as_rational();
      if (sgn(step) <= 0 || lo > hi) throw UsageError("grid needs lo <= hi and a positive step");
      for (mpq_class v = lo; v <= hi; v += step) {
        out.push_back(BetaSpec::parse(format_rational(v)));
        if (out.size() > 100000) throw UsageError("grid has more than 100000 points");
      }
    } else {
      std::stringstream ss(o.grid);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(BetaSpec::parse(item));
      }
    }
    return out;
  }
  if (!o.poly.empty()) {
    if (o.bracket.empty()) throw UsageError("--poly needs --bracket lo,hi");
    out.push_back(BetaSpec::from_polynomial(o.poly, o.bracket));
    return out;
  }
  const std::string& b = o.beta.empty() ? o.beta_pos : o.beta;
  if (b.empty()) throw UsageError("a base is required (--beta, --poly/--bracket or --beta-grid)");
  out.push_back(BetaSpec::parse(b));
  return out;
}

DynamicsOptions dyn_options(const Options& o) {
  DynamicsOptions d;
  d.max_bits = static_cast<mpfr_prec_t>(o.bits);
  return d;
}

struct Item {
  json result;
  std::vector<std::string> warnings;
  int exit_code = kOk;
};

using PerBase = std::function<json(const BetaSpec&, std::vector<std::string>&)>;

Item run_one(const BetaSpec& spec, const PerBase& fn) {
  Item it;
  try {
    it.result = fn(spec, it.warnings);
  } catch (const Error& e) {
    it.exit_code = exit_for(e.code());
    it.result = json{{"beta", spec.format()}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    it.warnings.push_back(spec.format() + ": " + e.what());
  }
  return it;
}

// Fans bases out over worker threads; results keep input order.
std::vector<Item> run_bases(const std::vector<BetaSpec>& bases, const PerBase& fn, int threads) {
  std::vector<Item> items(bases.size());
  if (bases.size() == 1) {
    items[0] = run_one(bases[0], fn);
    return items;
  }
  unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(bases.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < bases.size(); i = next++) items[i] = run_one(bases[i], fn);
    });
  }
  for (auto& th : pool) th.join();
  return items;
}

std::string csv_cell(const json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_null()) {
    s = "";
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += "\"\"";
      else q.push_back(c);
    }
    return q + "\"";
  }
  return s;
}

std::string to_csv(const std::vector<json>& rows) {
  if (rows.empty()) return "";
  std::vector<std::string> header;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) header.push_back(it.key());
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  for (const json& r : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      out += (i ? "," : "");
      out += r.contains(header[i]) ? csv_cell(r[header[i]]) : "";
    }
    out += "\n";
  }
  return out;
}

std::string envelope(const std::string& command, const json& inputs, const Options& o, const json& results,
                     const std::vector<std::string>& warnings) {
  json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["precision_bits"] = o.bits;
  j["results"] = results;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

json base_inputs(const Options& o) {
  json in;
  if (!o.grid.empty()) in["beta_grid"] = o.grid;
  else if (!o.poly.empty()) in["poly"] = o.poly, in["bracket"] = o.bracket;
  else in["beta"] = o.beta.empty() ? o.beta_pos : o.beta;
  return in;
}

// Shared driver for the per-base JSON commands.
Result per_base_command(const std::string& name, const Options& o, json inputs, const PerBase& fn) {
  const std::vector<BetaSpec> bases = resolve_bases(o);
  const std::vector<Item> items = run_bases(bases, fn, o.threads);
  Result r;
  std::vector<std::string> warnings;
  std::vector<json> rows;
  for (const Item& it : items) {
    warnings.insert(warnings.end(), it.warnings.begin(), it.warnings.end());
    rows.push_back(it.result);
    if (r.exit_code == kOk) r.exit_code = it.exit_code;
  }
  if (o.format == "csv") {
    r.out = to_csv(rows);
    for (const auto& w : warnings) r.err += "warning: " + w + "\n";
  } else {
    const json results = (o.grid.empty() && rows.size() == 1) ? rows.front() : json(rows);
    r.out = envelope(name, inputs, o, results, warnings);
  }
  return r;
}

// ---- commands ------------------------------------------------------------

Result cmd_markers(const Options& o) {
  if (o.k_max < 1) throw UsageError("k_max must be at least 1");
  std::vector<json> rows;
  for (int k = 1; k <= o.k_max; ++k) {
    json row;
    row["k"] = k;
    row["alpha"] = dec(marker(MarkerKind::Alpha, k, 64), 12);
    row["gamma"] = dec(marker(MarkerKind::Gamma, k, 64), 12);
    row["eta"] = dec(marker(MarkerKind::Eta, k, 64), 12);
    rows.push_back(row);
  }
  Result r;
  if (o.format == "json") {
    r.out = envelope("markers", json{{"k_max", o.k_max}}, o, rows, {});
  } else {
    r.out = to_csv(rows);
  }
  return r;
}

Result cmd_graph(const Options& o) {
  if (o.pts < 2) throw UsageError("--pts must be at least 2");
  const int depth = o.depth < 0 ? 8 : o.depth;
  if (depth < 1) throw UsageError("--depth must be at least 1");
  const std::vector<BetaSpec> bases = resolve_bases(o);
  if (bases.size() != 1) throw UsageError("graph takes a single base");
  const BetaCtx ctx(bases[0].value(), dyn_options(o));
  auto segs = graph_samples(ctx, o.digit, depth, o.pts);
  // left to right, so a plotter draws segments in domain order
  std::stable_sort(segs.begin(), segs.end(), [&](const GraphSegment& a, const GraphSegment& b) {
    return ctx.cmp_certain(a.points.front().first, b.points.front().first, "graph order") == Ordering::Less;
  });
  std::vector<json> rows;
  for (const auto& s : segs) {
    for (const auto& [x, y] : s.points) {
      json row;
      row["x"] = dec(x, 17);
      row["Ux"] = dec(y, 17);
      row["branch_id"] = s.branch_index;
      rows.push_back(row);
    }
  }
  Result r;
  if (o.format == "json") {
    json in = base_inputs(o);
    in["digit"] = o.digit;
    in["depth"] = depth;
    in["pts"] = o.pts;
    r.out = envelope("graph", in, o, rows, {});
  } else {
    r.out = rows.empty() ? "x,Ux,branch_id\n" : to_csv(rows);
  }
  return r;
}

Result cmd_branches(const Options& o) {
  const int depth = o.depth < 0 ? 8 : o.depth;
  if (depth < 1) throw UsageError("--depth must be at least 1");
  const std::vector<BetaSpec> bases = resolve_bases(o);
  if (bases.size() != 1) throw UsageError("branches takes a single base");
  const BetaCtx ctx(bases[0].value(), dyn_options(o));
  const auto branches = enumerate_branches(ctx, o.digit, depth);
  std::vector<json> rows;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const Branch& b = branches[i];
    json row;
    row["branch_index"] = i;
    row["return_time"] = b.return_time;
    row["word"] = b.word.to_string();
    row["dom_lo"] = dec(b.domain.lo, 17);
    row["dom_hi"] = dec(b.domain.hi, 17);
    row["full"] = b.full;
    rows.push_back(row);
  }
  Result r;
  if (o.format == "json") {
    json in = base_inputs(o);
    in["digit"] = o.digit;
    in["depth"] = depth;
    r.out = envelope("branches", in, o, rows, {});
  } else {
    r.out = rows.empty() ? "branch_index,return_time,word,dom_lo,dom_hi,full\n" : to_csv(rows);
  }
  return r;
}

std::string regime_tag(const Regime& r) {
  switch (r.tag) {
    case Regime::Tag::BelowOrAtGolden: return "BelowOrAtGolden";
    case Regime::Tag::ThmFree: return "ThmFree";
    case Regime::Tag::ThmExists: return "ThmExists";
    case Regime::Tag::Gap: return "Gap";
  }
  return "?";
}

Result cmd_classify(const Options& o) {
  return per_base_command("classify", o, base_inputs(o), [&](const BetaSpec& spec, std::vector<std::string>&) {
    const CertReal beta = spec.value();
    const Regime reg = classify_beta(beta, 64, static_cast<mpfr_prec_t>(o.bits));
    json j;
    j["beta"] = spec.format();
    j["value"] = number(beta, o);
    j["regime"] = regime_tag(reg);
    j["k"] = reg.k;
    json cert;
    if (reg.k >= 1) {
      const BetaCtx ctx(beta, dyn_options(o));
      const int k = reg.k;
      cert["alpha_k"] = dec(marker(MarkerKind::Alpha, k));
      cert["gamma_k"] = dec(marker(MarkerKind::Gamma, k));
      cert["eta_k"] = dec(marker(MarkerKind::Eta, k));
      cert["alpha_k1"] = dec(marker(MarkerKind::Alpha, k + 1));
      const HopCheck h = check_hop(ctx, k);
      cert["jump"] = h.jump;
      cert["closure"] = h.closure;
      cert["crossover"] = check_crossover(ctx, k);
    } else {
      cert["gamma_1"] = dec(marker(MarkerKind::Gamma, 1));
    }
    j["certificates"] = cert;
    return j;
  });
}

Result cmd_membership(const Options& o) {
  const long depth = o.depth < 0 ? 5000 : o.depth;
  json in = base_inputs(o);
  in["depth"] = depth;
  return per_base_command("membership", o, in, [&](const BetaSpec& spec, std::vector<std::string>& warnings) {
    const BetaCtx ctx(spec.value(), dyn_options(o));
    const MVerdict v = m_membership(ctx, depth);
    json j;
    j["beta"] = spec.format();
    switch (v.tag) {
      case MVerdict::Tag::Member: j["verdict"] = "Member"; break;
      case MVerdict::Tag::NonMember: j["verdict"] = "NonMember"; break;
      case MVerdict::Tag::Unknown: j["verdict"] = "Unknown"; break;
    }
    if (v.tag == MVerdict::Tag::Member) {
      j["witness"] = v.witness == MVerdict::Witness::BoundaryHit ? "BoundaryHit" : "UnivoquePersists";
    }
    j["depth"] = v.depth;
    j["word"] = digits_string(v.word);
    if (v.witness == MVerdict::Witness::BoundaryHit) j["landed"] = std::string(to_string(v.landed));
    j["summary"] = v.to_string();
    if (v.tag == MVerdict::Tag::Unknown) {
      warnings.push_back(spec.format() + ": membership undecided at depth " + std::to_string(v.depth));
    }
    if (v.witness == MVerdict::Witness::UnivoquePersists) {
      warnings.push_back(spec.format() + ": step cap reached; no interior hit within " + std::to_string(depth) +
                         " steps");
    }
    return j;
  });
}

Result cmd_glst(const Options& o) {
  const int depth = o.depth < 0 ? 16 : o.depth;
  json in = base_inputs(o);
  in["digit"] = o.digit;
  in["depth"] = depth;
  return per_base_command("glst-verify", o, in, [&](const BetaSpec& spec, std::vector<std::string>& warnings) {
    const BetaCtx ctx(spec.value(), dyn_options(o));
    const GlstReport rep = glst_verify(ctx, o.digit, depth);
    json j;
    j["beta"] = spec.format();
    j["digit"] = o.digit;
    j["depth"] = rep.depth;
    j["all_full"] = rep.all_full;
    j["length_gap"] = number(rep.length_gap, o);
    j["verdict"] = std::string(to_string(rep.verdict));
    if (rep.incomplete_witness) {
      const Branch& b = *rep.incomplete_witness;
      j["incomplete_witness"] = json{{"word", b.word.to_string()},
                                     {"return_time", b.return_time},
                                     {"domain", itv_json(b.domain, o)},
                                     {"image", itv_json(b.image, o)}};
    }
    j["membership"] = rep.membership.to_string();
    if (rep.membership.tag == MVerdict::Tag::Unknown) {
      warnings.push_back(spec.format() + ": membership undecided at depth " + std::to_string(rep.membership.depth));
    }
    return j;
  });
}

// Counts from `from` on; plain numbers unless they overflow 64 bits.
json counts_json(const std::vector<mpz_class>& counts, std::size_t from) {
  json out = json::array();
  for (std::size_t i = from; i < counts.size(); ++i) {
    if (mpz_fits_ulong_p(counts[i].get_mpz_t())) {
      out.push_back(counts[i].get_ui());
    } else {
      out.push_back(counts[i].get_str());
    }
  }
  return out;
}

void witness_json(json& j, const std::optional<RealizationWitness>& w) {
  if (w) {
    const Enclosure e = w->x.refined(96).enclosure();
    j["witness_x"] = json::array({CertReal::from_rational(e.lo_rational()).to_decimal(kDigits),
                                  CertReal::from_rational(e.hi_rational()).to_decimal(kDigits)});
    j["omega_prefix"] = digits_string(w->omega_prefix);
  } else {
    j["witness_x"] = nullptr;
    j["omega_prefix"] = nullptr;
  }
}

Result cmd_realize(const Options& o) {
  const std::vector<int> times = parse_int_list(o.times, "--times");
  const std::vector<int> omega = parse_omega(o.omega);
  if (!o.omega.empty() && omega.size() != times.size()) throw UsageError("--omega and --times differ in length");
  RealizeOptions ro;
  if (o.depth >= 0) ro.depth_cap = o.depth;
  json in = base_inputs(o);
  in["times"] = times;
  if (!o.omega.empty()) in["omega"] = digits_string(omega);
  return per_base_command("realize", o, in, [&](const BetaSpec& spec, std::vector<std::string>& warnings) {
    const BetaCtx ctx(spec.value(), dyn_options(o));
    json j;
    j["beta"] = spec.format();
    if (!o.omega.empty()) {
      const FixedOmegaResult res = realize_fixed_omega(ctx, omega, times, ro);
      j["mode"] = "fixed_omega";
      j["realizable"] = res.nonempty();
      if (res.listed) {
        json cj = json::array();
        for (const Itv& c : res.components()) cj.push_back(itv_json(c, o));
        j["components"] = cj;
        std::vector<std::size_t> counts;
        for (std::size_t i = 1; i < res.levels.size(); ++i) counts.push_back(res.levels[i].size());
        j["component_count_per_level"] = counts;
      } else {
        j["components"] = nullptr;
        j["component_count_per_level"] = nullptr;
        warnings.push_back(spec.format() + ": " + res.leaf_count_per_level.back().get_str() +
                           " pieces, too many to list");
      }
      j["leaf_count_per_level"] = counts_json(res.leaf_count_per_level, 1);
      witness_json(j, res.witness);
    } else {
      const ExistsResult res = realize_exists_omega(ctx, times, ro);
      j["mode"] = "exists_omega";
      j["realizable"] = res.realizable();
      witness_json(j, res.witness);
      j["leaf_count_per_level"] = counts_json(res.tree.leaf_count_per_level, 0);
      std::vector<bool> cov = res.tree.covering_per_level;
      j["covering_per_level"] = cov;
    }
    return j;
  });
}

Result cmd_ergodic(const Options& o) {
  const int depth = o.depth < 0 ? 40 : o.depth;
  json in = base_inputs(o);
  in["digit"] = o.digit;
  in["depth"] = depth;
  if (o.samples > 0) {
    in["samples"] = o.samples;
    in["seed"] = o.seed;
    if (!o.x0.empty()) in["x0"] = o.x0;
  }
  return per_base_command("ergodic", o, in, [&](const BetaSpec& spec, std::vector<std::string>& warnings) {
    const BetaCtx ctx(spec.value(), dyn_options(o));
    json j;
    j["beta"] = spec.format();
    const ExpectedReturn e = expected_return_time(ctx, o.digit, depth);
    j["value"] = number(e.total, o);
    j["partial"] = number(e.partial, o);
    j["tail"] = number(e.tail, o);
    j["tail_certified"] = e.tail_certified;
    j["depth"] = e.depth;
    if (!e.tail_certified) {
      j["tail"] = "unbounded";
      warnings.push_back(spec.format() + ": return-time tail not certified beyond depth " + std::to_string(depth));
    }
    if (o.samples > 0) {
      CertReal x0;
      if (!o.x0.empty()) {
        x0 = BetaSpec::parse(o.x0).value();
      } else {
        std::mt19937_64 rng(o.seed);
        mpz_class u;
        mpz_set_ui(u.get_mpz_t(), static_cast<unsigned long>(rng() >> 11));
        mpq_class t(u, mpz_class(1) << 53);
        t.canonicalize();
        x0 = ctx.switch_lo() + ctx.switch_length() * CertReal::from_rational(t);
      }
      const BirkhoffResult b = birkhoff_average(ctx, o.digit, x0, o.samples, ctx.options().step_cap);
      j["birkhoff"] = json{{"x0", dec(x0)},
                           {"returns", o.samples},
                           {"mean", CertReal::from_rational(b.mean).to_decimal(12)},
                           {"exact_steps", b.exact_steps},
                           {"total_steps", b.total_steps}};
    }
    return j;
  });
}

Result cmd_luroth(const Options& o) {
  if (o.x.empty()) throw UsageError("--x is required");
  const auto q = CertReal::parse_rational(o.x).as_rational();
  const int n = o.depth < 0 ? 20 : o.depth;
  const LurothDigits d = luroth_classic(*q, n);
  json j;
  j["x"] = format_rational(*q);
  j["digits"] = d.digits;
  j["terminated"] = d.terminated;
  const mpq_class s = luroth_series(d.digits);
  j["partial_sum"] = CertReal::from_rational(s).to_decimal(kDigits);
  j["error"] = CertReal::from_rational(*q - s).to_decimal(6);
  Result r;
  r.out = envelope("luroth", json{{"x", o.x}, {"digits", n}}, o, j, {});
  return r;
}

void add_common(CLI::App* sub, Options& o, bool positional_beta = true) {
  sub->add_option("--beta", o.beta, "Base: decimal, p/q, golden, multinacci(k), alpha(k), eta(k), poly(P;lo;hi)");
  if (positional_beta) sub->add_option("base", o.beta_pos, "Base (same forms as --beta)");
  sub->add_option("--poly", o.poly, "Polynomial whose root is the base, e.g. x^3-x^2-x-1");
  sub->add_option("--bracket", o.bracket, "Isolating bracket lo,hi for --poly");
  sub->add_option("--beta-grid", o.grid, "Batch of bases: lo:hi:step or a comma list");
  sub->add_option("--bits", o.bits, "Precision ceiling in bits for comparisons")->capture_default_str();
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--exact", o.exact, "Also print dyadic enclosure endpoints");
  sub->add_option("--threads", o.threads, "Worker threads for --beta-grid (0 = all cores)");
}

void add_digit(CLI::App* sub, Options& o) {
  sub->add_option("--digit", o.digit, "First digit / constant omega digit")->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
}

}  // namespace

Result run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Return times of the random beta-transformation"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto* markers = app.add_subcommand("markers", "Table of the alpha_k, gamma_k, eta_k markers");
  markers->add_option("k_max", o.k_max, "Largest k")->capture_default_str();
  markers->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  markers->add_option("--bits", o.bits, "Precision ceiling in bits")->capture_default_str();

  auto* graph = app.add_subcommand("graph", "Samples of the first-return map graph, one segment per branch");
  add_common(graph, o);
  add_digit(graph, o);
  graph->add_option("--depth", o.depth, "Largest return time (default 8)");
  graph->add_option("--pts", o.pts, "Points per branch")->capture_default_str();

  auto* branches = app.add_subcommand("branches", "Branch table of the first-return map");
  add_common(branches, o);
  add_digit(branches, o);
  branches->add_option("--depth", o.depth, "Largest return time (default 8)");

  auto* classify = app.add_subcommand("classify", "Regime of the base among the markers");
  add_common(classify, o);

  auto* realize = app.add_subcommand("realize", "Realizability of a prefix of return times");
  add_common(realize, o);
  realize->add_option("--times", o.times, "Comma separated return times")->required();
  realize->add_option("--omega", o.omega, "Fixed omega prefix, e.g. 010; omitted = some omega");
  realize->add_option("--depth", o.depth, "Prefix length cap (default 16)");

  auto* membership = app.add_subcommand("membership", "Membership in M from the forced orbit of 1");
  add_common(membership, o);
  membership->add_option("--depth", o.depth, "Forced step cap (default 5000)");

  auto* glst = app.add_subcommand("glst-verify", "Fullness of the first-return branches");
  add_common(glst, o);
  add_digit(glst, o);
  glst->add_option("--depth", o.depth, "Largest return time (default 16)");

  auto* ergodic = app.add_subcommand("ergodic", "Expected return time and Birkhoff averages");
  add_common(ergodic, o);
  add_digit(ergodic, o);
  ergodic->add_option("--depth", o.depth, "Return time summed exactly before the tail (default 40)");
  ergodic->add_option("--samples", o.samples, "Number of returns for a Birkhoff average (0 = none)");
  ergodic->add_option("--seed", o.seed, "Seed for the generic start point")->capture_default_str();
  ergodic->add_option("--x0", o.x0, "Start point instead of a seeded one");

  auto* luroth = app.add_subcommand("luroth", "Classic Luroth digits of a rational");
  luroth->add_option("--x", o.x, "Rational in (0,1]")->required();
  luroth->add_option("--depth", o.depth, "Number of digits (default 20)");

  Result r;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    r.out = app.help();
    for (CLI::App* s : app.get_subcommands()) r.out = s->help();
    return r;
  } catch (const CLI::CallForAllHelp&) {
    r.out = app.help("", CLI::AppFormatMode::All);
    return r;
  } catch (const CLI::ParseError& e) {
    r.exit_code = kUsage;
    r.err = std::string("error: ") + e.what() + "\n";
    return r;
  }

  try {
    if (markers->parsed()) return cmd_markers(o);
    if (graph->parsed()) return cmd_graph(o);
    if (branches->parsed()) return cmd_branches(o);
    if (classify->parsed()) return cmd_classify(o);
    if (realize->parsed()) return cmd_realize(o);
    if (membership->parsed()) return cmd_membership(o);
    if (glst->parsed()) return cmd_glst(o);
    if (ergodic->parsed()) return cmd_ergodic(o);
    if (luroth->parsed()) return cmd_luroth(o);
  } catch (const UsageError& e) {
    r.exit_code = kUsage;
    r.err = std::string("error: ") + e.what() + "\n";
    return r;
  } catch (const Error& e) {
    r.exit_code = exit_for(e.code());
    r.err = std::string("error: ") + e.what() + "\n";
    return r;
  }
  r.exit_code = kUsage;
  r.err = "error: no command\n";
  return r;
}

}  // namespace betaret::cli
