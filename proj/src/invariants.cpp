#include "mipkit/invariants.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "mipkit/error.hpp"
#include "mipkit/fp.hpp"
#include "mipkit/obelisk.hpp"

namespace mipkit {

namespace {

std::vector<Subgroup> lcs_of(const PcGroup& g) { return lower_central_series(Subgroup::whole(g)); }

// gamma_i for i >= 1; trivial past the end of the series.
Subgroup gamma(const std::vector<Subgroup>& lcs, int i) {
  return i <= static_cast<int>(lcs.size()) ? lcs[i - 1] : lcs.back();
}

Subgroup gamma2p_gamma(const std::vector<Subgroup>& lcs, int k) { return join(agemo(gamma(lcs, 2)), gamma(lcs, k)); }

Subgroup second_center(const PcGroup& g) {
  auto ucs = upper_central_series(g);
  return ucs.size() > 2 ? ucs[2] : ucs.back();
}

Json check_json(const HypothesisCheck& c) {
  Json j;
  j["holds"] = c.holds;
  j["failed"] = c.failed;
  j["details"] = c.details;
  return j;
}

// Conditions shared by the K_G family: p odd, gamma_2^p gamma_4 = 1 and the
// indices of Phi(G) and Z_2(G).
struct Base {
  bool p_odd, small_power, frattini_p3, z2_p3;
  int cls;
  int log_gamma2_over_cap;
  int log_gamma3;
};

Base base_of(const PcGroup& g, const std::vector<Subgroup>& lcs) {
  Base b{};
  const Subgroup whole = Subgroup::whole(g);
  b.p_odd = g.prime() % 2 == 1;
  b.small_power = gamma2p_gamma(lcs, 4).is_trivial();
  b.frattini_p3 = rank(whole) == 3;
  b.z2_p3 = g.log_order() - second_center(g).log_order() == 3;
  b.cls = static_cast<int>(lcs.size()) - 1;
  b.log_gamma2_over_cap = gamma(lcs, 2).log_order() - gamma_cap(g).log_order();
  b.log_gamma3 = gamma(lcs, 3).log_order();
  return b;
}

void require(bool cond, const char* what, HypothesisCheck& c) {
  if (!cond) c.failed.emplace_back(what);
}

}  // namespace

Json fingerprint_json(const PcGroup& g) {
  GroupFingerprint f = fingerprint(g);
  Json j;
  j["log_order"] = f.log_order;
  j["class"] = f.nilpotency_class;
  j["lower_central_ranks"] = f.lower_central_ranks;
  j["upper_central_ranks"] = f.upper_central_ranks;
  j["abelianization"] = f.abelianization;
  j["rank"] = f.rank;
  j["center_log_order"] = f.center_log_order;
  j["exponent_log"] = f.exponent_log;
  j["order_histogram"] = f.order_histogram;
  j["class_count"] = f.class_count;
  j["jennings_dims"] = jennings(g).dims;
  return j;
}

Json signature_json(const JenLieAlgebra::Signature& s) {
  Json j;
  j["dims"] = s.dims;
  j["bracket_ranks"] = s.bracket_ranks;
  j["center_dims"] = s.center_dims;
  j["pmap_kernel"] = s.pmap_kernel;
  j["pmap_image_rank"] = s.pmap_image_rank;
  j["derived_dims"] = s.derived_dims;
  return j;
}

Quotient sandling_quotient(const PcGroup& g) { return quotient(g, gamma2p_gamma(lcs_of(g), 3)); }

Quotient two_gen_quotient(const PcGroup& g) {
  if (rank(Subgroup::whole(g)) > 2) throw PreconditionError("G is not 2-generated");
  return quotient(g, gamma2p_gamma(lcs_of(g), 4));
}

std::optional<BaginskiCentralizer> baginski_centralizer(const PcGroup& g) {
  const Subgroup whole = Subgroup::whole(g);
  const Subgroup g2 = commutator(whole, whole);
  Quotient q = quotient(g, frattini(g2));
  Subgroup c = q.preimage(centralizer(Subgroup::whole(q.group), q.image(g2)));
  Quotient top = quotient(g, c);
  if (rank(Subgroup::whole(top.group)) > 1) return std::nullopt;
  BaginskiCentralizer r{c, c.is_abelian(), {}};
  if (r.abelian) r.type = abelian_invariants(c);
  return r;
}

Subgroup compute_K_G(const PcGroup& g) {
  const int p = g.prime();
  auto lcs = lcs_of(g);
  const Subgroup whole = Subgroup::whole(g);
  const Subgroup z2 = second_center(g);
  const Subgroup g2 = gamma(lcs, 2);
  std::vector<std::string> bad;
  if (lcs.size() != 4) bad.push_back("class is not 3");
  if (!g2.is_abelian() || !agemo(g2).is_trivial()) bad.push_back("gamma_2 is not elementary abelian");
  if (rank(whole) != 3) bad.push_back("|G:Phi(G)| is not p^3");
  if (g.log_order() - z2.log_order() != 3) bad.push_back("|G:Z_2(G)| is not p^3");
  if (bad.empty() && !(frattini(whole) == z2)) bad.push_back("G/Z_2(G) is not elementary abelian");
  if (!bad.empty()) {
    std::string msg = "K_G undefined:";
    for (const auto& b : bad) msg += " " + b + ";";
    msg.pop_back();
    throw PreconditionError(msg);
  }
  const Subgroup cap = gamma_cap(g);
  const int e = g2.log_order() - cap.log_order();
  if (e == 3) return z2;
  if (e != 2) throw InternalError(fmt::format("|gamma_2 : Gamma| = p^{} contradicts the K_G structure", e));

  // U = G/Z_2 with basis u_1, u_2, u_3; the commutator map on wedge^2 U lands
  // in gamma_2/Gamma, whose kernel is spanned by one decomposable 2-vector.
  Quotient qu = quotient(g, z2);
  std::vector<Elem> u;
  for (int k = 0; k < 3; ++k) u.push_back(qu.lift(qu.group.gen(k)));
  Quotient qc = quotient(g, cap);
  Subgroup g2bar = qc.image(g2);
  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  fp::Matrix nu(p, 2, 3);
  for (int col = 0; col < 3; ++col) {
    auto c = g2bar.coords(qc.project(g.comm(u[pairs[col].first], u[pairs[col].second])));
    for (int r = 0; r < 2; ++r) nu(r, col) = c[r];
  }
  auto ker = nu.nullspace();
  if (ker.size() != 1) throw InternalError("commutator map on wedge^2 U is not onto gamma_2/Gamma");
  const auto& w = ker[0];  // coefficients of u1^u2, u1^u3, u2^u3
  fp::Matrix f(p, 1, 3);
  f(0, 0) = w[2];
  f(0, 1) = fp::mod(-w[1], p);
  f(0, 2) = w[0];
  auto basis = f.nullspace();
  std::vector<Elem> gens = z2.gens();
  std::vector<Elem> wl;
  for (const auto& v : basis) {
    Elem x = g.identity();
    for (int k = 0; k < 3; ++k) x = g.mul(x, g.pow(u[k], v[k]));
    wl.push_back(x);
    gens.push_back(x);
  }
  Subgroup k = closure(g, gens);
  const int dim_w = k.log_order() - z2.log_order();
  if (dim_w * (dim_w - 1) / 2 != 3 - e) throw InternalError("K_G fails the exactness dimension count");
  if (!cap.contains(g.comm(wl[0], wl[1]))) throw InternalError("wedge^2 of K_G/Z_2 is not in the kernel");
  return k;
}

HypothesisCheck sandling_check(const PcGroup& g) {
  HypothesisCheck c;
  c.name = "sandling_quotient_is_group";
  Subgroup n = gamma2p_gamma(lcs_of(g), 3);
  c.holds = n.is_trivial();
  require(c.holds, "gamma_2^p gamma_3 is not trivial", c);
  c.details["kernel_log_order"] = n.log_order();
  return c;
}

HypothesisCheck maximal_abelian_centralizer_check(const PcGroup& g) {
  HypothesisCheck c;
  c.name = "maximal_abelian_centralizer";
  auto lcs = lcs_of(g);
  const Subgroup whole = Subgroup::whole(g);
  Subgroup cent = centralizer(whole, gamma(lcs, 2));
  require(g.prime() % 2 == 1, "p is even", c);
  require(gamma2p_gamma(lcs, 4).is_trivial(), "gamma_2^p gamma_4 is not trivial", c);
  require(g.log_order() - cent.log_order() == 1, "C_G(gamma_2) is not maximal", c);
  require(cent.is_abelian(), "C_G(gamma_2) is not abelian", c);
  c.holds = c.failed.empty();
  c.details["centralizer_log_index"] = g.log_order() - cent.log_order();
  c.details["centralizer_abelian"] = cent.is_abelian();
  return c;
}

HypothesisCheck k_g_check(const PcGroup& g) {
  HypothesisCheck c;
  c.name = "k_g_condition";
  auto lcs = lcs_of(g);
  Base b = base_of(g, lcs);
  require(b.p_odd, "p is even", c);
  require(b.small_power, "gamma_2^p gamma_4 is not trivial", c);
  require(b.frattini_p3, "|G:Phi(G)| is not p^3", c);
  require(b.z2_p3, "|G:Z_2(G)| is not p^3", c);
  if (c.failed.empty() && b.cls == 3) {
    try {
      const Subgroup whole = Subgroup::whole(g);
      Subgroup k = compute_K_G(g);
      c.details["k_g_log_index"] = g.log_order() - k.log_order();
      bool ok = commutator(k, gamma(lcs, 2)).contains(commutator(commutator(k, whole), whole));
      require(ok, "[[K_G,G],G] is not contained in [K_G,gamma_2]", c);
    } catch (const PreconditionError& e) {
      c.failed.emplace_back(e.what());
    }
  }
  c.holds = c.failed.empty();
  return c;
}

std::vector<HypothesisCheck> corollary_checks(const PcGroup& g) {
  auto lcs = lcs_of(g);
  Base b = base_of(g, lcs);
  std::vector<HypothesisCheck> out;

  HypothesisCheck three{};
  three.name = "k_g_small_layer_corollary";
  require(b.p_odd, "p is even", three);
  require(b.small_power, "gamma_2^p gamma_4 is not trivial", three);
  require(b.frattini_p3, "|G:Phi(G)| is not p^3", three);
  require(b.z2_p3, "|G:Z_2(G)| is not p^3", three);
  require(b.log_gamma2_over_cap == 3 || b.log_gamma3 == 1, "neither |gamma_2:Gamma| = p^3 nor |gamma_3| = p", three);
  three.holds = three.failed.empty();
  three.details["log_gamma2_over_gamma"] = b.log_gamma2_over_cap;
  three.details["log_gamma3"] = b.log_gamma3;
  out.push_back(three);

  HypothesisCheck six{};
  six.name = "order_p6_corollary";
  require(b.p_odd, "p is even", six);
  require(g.log_order() == 6, "|G| is not p^6", six);
  require(b.small_power, "gamma_2^p gamma_4 is not trivial", six);
  require(b.z2_p3, "|G:Z_2(G)| is not p^3", six);
  six.holds = six.failed.empty();
  out.push_back(six);

  HypothesisCheck seven{};
  seven.name = "order_p7_corollary";
  require(b.p_odd, "p is even", seven);
  require(g.log_order() == 7, "|G| is not p^7", seven);
  require(b.small_power, "gamma_2^p gamma_4 is not trivial", seven);
  require(b.frattini_p3, "|G:Phi(G)| is not p^3", seven);
  require(b.z2_p3, "|G:Z_2(G)| is not p^3", seven);
  if (seven.failed.empty() && b.log_gamma3 != 1 && b.cls == 3) {
    try {
      Subgroup k = compute_K_G(g);
      require(commutator(k, gamma(lcs, 2)) == gamma(lcs, 3), "[K_G,gamma_2] differs from gamma_3", seven);
    } catch (const PreconditionError& e) {
      seven.failed.emplace_back(e.what());
    }
  }
  seven.holds = seven.failed.empty();
  out.push_back(seven);
  return out;
}

Json mip_status(const PcGroup& g) {
  Json j;
  bool settled = false;
  auto add = [&](const HypothesisCheck& c) {
    j[c.name] = check_json(c);
    settled = settled || c.holds;
  };
  add(sandling_check(g));
  add(maximal_abelian_centralizer_check(g));
  add(k_g_check(g));
  for (const auto& c : corollary_checks(g)) add(c);
  j["settled"] = settled;
  return j;
}

LowerCentralTypes lower_central_types(const PcGroup& g) {
  auto lcs = lcs_of(g);
  const Subgroup whole = Subgroup::whole(g);
  LowerCentralTypes r;
  const Subgroup g3 = gamma(lcs, 3);
  r.applicable = g.prime() % 2 == 1 && rank(whole) <= 2 && center(whole).contains(g3) && agemo(g3).is_trivial();
  r.cls = static_cast<int>(lcs.size()) - 1;
  for (int i = 2; i <= r.cls; ++i) {
    LowerCentralTerm t;
    t.i = i;
    const Subgroup& gi = lcs[i - 1];
    t.abelian = gi.is_abelian();
    if (t.abelian)
      t.type = abelian_invariants(gi);
    else
      t.fingerprint = fingerprint_json(as_group(gi).group);
    r.terms.push_back(std::move(t));
  }
  return r;
}

std::optional<LowerCentralTypes> lower_central_invariant(const PcGroup& g) {
  auto r = lower_central_types(g);
  if (!r.applicable) return std::nullopt;
  return r;
}

long long roggenkamp(const PcGroup& g) {
  const Subgroup whole = Subgroup::whole(g);
  // C_G(x^k) = C_G(x) for k prime to p, so one centralizer serves the
  // classes of x, x^2, ..., x^(p-1).
  std::unordered_map<std::uint64_t, int> known;
  long long sum = 0;
  for (const auto& c : conjugacy_classes(g)) {
    if (auto it = known.find(g.index(c.rep)); it != known.end()) {
      sum += it->second;
      continue;
    }
    const int r = rank(centralizer(whole, c.rep));
    sum += r;
    for (int k = 2; k < g.prime(); ++k) {
      std::vector<Elem> orbit{g.pow(c.rep, k)};
      known.emplace(g.index(orbit[0]), r);
      for (std::size_t at = 0; at < orbit.size(); ++at)
        for (const auto& y : whole.gens()) {
          Elem z = g.conj(orbit[at], y);
          if (known.emplace(g.index(z), r).second) orbit.push_back(z);
        }
    }
  }
  return sum;
}

TruncatedFingerprint truncated_fingerprint(const PcGroup& g, int m) {
  if (m < 2) throw UsageError("truncated fingerprint needs m >= 2");
  JenningsData j = jennings(g);
  auto counts = monomial_weight_counts(j);
  TruncatedFingerprint t;
  t.m = m;
  for (int i = 1; i < m; ++i) t.dims.push_back(i <= static_cast<int>(counts.size()) ? counts[i - 1] : 0);
  t.jen = JenLieAlgebra(j).signature(m - 1);
  return t;
}

InvariantReport battery(const PcGroup& g, const BatteryOptions& opts) {
  InvariantReport rep;
  rep.prime = g.prime();
  Json& r = rep.json;
  auto field = [&](const char* name, const std::function<Json()>& f) {
    try {
      r[name] = f();
    } catch (const ResourceError& e) {
      r[name] = Json{{"unavailable", e.what()}};
    }
  };
  const Subgroup whole = Subgroup::whole(g);
  auto lcs = lcs_of(g);

  r["prime"] = g.prime();
  r["log_order"] = g.log_order();
  r["class"] = static_cast<int>(lcs.size()) - 1;
  r["generator_count"] = rank(whole);
  r["abelianization"] = abelian_invariants(Subgroup::whole(quotient(g, gamma(lcs, 2)).group));
  r["frattini_rank"] = rank(whole);
  field("dimension_ranks", [&] {
    Json j;
    j["group"] = jennings(g).dims;
    const Subgroup& g2 = gamma(lcs, 2);
    j["derived_subgroup"] = g2.is_trivial() ? std::vector<int>{} : jennings(as_group(g2).group).dims;
    return j;
  });
  r["gamma_type"] = abelian_invariants(gamma_cap(g));
  field("sandling_quotient", [&] {
    Quotient q = sandling_quotient(g);
    rep.sandling = q.group;
    Json j;
    j["log_order"] = q.group.log_order();
    j["fingerprint"] = fingerprint_json(q.group);
    return j;
  });
  field("jen", [&] { return signature_json(JenLieAlgebra(jennings(g)).signature()); });
  field("two_generated", [&] {
    Json j;
    j["holds"] = rank(whole) <= 2;
    if (rank(whole) <= 2) {
      Quotient q = two_gen_quotient(g);
      rep.two_gen = q.group;
      j["quotient_log_order"] = q.group.log_order();
      j["quotient_fingerprint"] = fingerprint_json(q.group);
    }
    return j;
  });
  field("baginski", [&] {
    Json j;
    auto b = baginski_centralizer(g);
    j["applicable"] = b.has_value();
    if (b) {
      j["log_order"] = b->centralizer.log_order();
      if (b->abelian) {
        j["abelian_type"] = b->type;
      } else {
        PcGroup c = as_group(b->centralizer).group;
        rep.baginski = c;
        j["fingerprint"] = fingerprint_json(c);
      }
    }
    return j;
  });
  field("lower_central_types", [&] {
    auto t = lower_central_types(g);
    Json j;
    j["applicable"] = t.applicable;
    j["class"] = t.cls;
    Json terms = Json::array();
    for (const auto& term : t.terms) {
      Json x;
      x["i"] = term.i;
      if (term.abelian)
        x["abelian_type"] = term.type;
      else
        x["non_abelian"] = term.fingerprint;
      terms.push_back(x);
    }
    j["terms"] = terms;
    return j;
  });
  field("roggenkamp", [&] { return Json(roggenkamp(g)); });
  field("obelisk", [&] {
    Json j;
    j["predicate"] = obelisk_predicate(g);
    j["is_obelisk"] = is_obelisk(g);
    bool framed_defined = is_obelisk(g) && lcs.size() >= 4;
    j["framed"] = framed_defined ? Json(is_framed(g)) : Json(nullptr);
    return j;
  });
  field("truncated_fingerprint", [&] {
    auto t = truncated_fingerprint(g, opts.truncation);
    Json j;
    j["m"] = t.m;
    j["dims"] = t.dims;
    j["jen"] = signature_json(t.jen);
    return j;
  });
  field("mip_status", [&] { return mip_status(g); });
  return rep;
}

std::string to_string(CompareVerdict v) {
  switch (v) {
    case CompareVerdict::distinguished:
      return "distinguished";
    case CompareVerdict::indistinguishable:
      return "indistinguishable-by-battery";
    case CompareVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Json CompareResult::to_json() const {
  Json j;
  j["verdict"] = to_string(verdict);
  int n = 0;
  for (const auto& f : fields) n += f.outcome == "distinguished";
  j["distinguished_fields"] = n;
  Json fs = Json::array();
  for (const auto& f : fields) {
    Json x;
    x["field"] = f.field;
    x["outcome"] = f.outcome;
    if (!f.detail.empty()) x["detail"] = f.detail;
    fs.push_back(x);
  }
  j["fields"] = fs;
  return j;
}

namespace {

bool unavailable(const Json& v) { return v.is_object() && v.contains("unavailable"); }

// Fingerprints first, then a bounded isomorphism search.
FieldComparison compare_quotients(const std::string& name, const Json& fa, const Json& fb,
                                  const std::optional<PcGroup>& ga, const std::optional<PcGroup>& gb,
                                  std::uint64_t budget) {
  if (fa != fb) return {name, "distinguished", "fingerprints differ"};
  if (!ga || !gb) return {name, "equal", "abelian of equal type"};
  if (ga->is_abelian() && gb->is_abelian()) return {name, "equal", "abelian with equal fingerprints"};
  IsoResult r = iso_search(*ga, *gb, budget);
  switch (r.verdict) {
    case IsoVerdict::isomorphic:
      return {name, "equal", "isomorphic"};
    case IsoVerdict::non_isomorphic:
      return {name, "distinguished", "non-isomorphic: " + r.reason};
    case IsoVerdict::unknown:
      break;
  }
  return {name, "unknown", "fingerprints agree; isomorphism search exhausted its budget"};
}

}  // namespace

CompareResult compare(const InvariantReport& a, const InvariantReport& b, std::uint64_t iso_budget) {
  CompareResult out;
  const Json& x = a.json;
  const Json& y = b.json;
  auto push = [&](FieldComparison f) { out.fields.push_back(std::move(f)); };
  auto plain = [&](const char* name) {
    if (unavailable(x[name]) || unavailable(y[name])) return push({name, "unavailable", ""});
    push({name, x[name] == y[name] ? "equal" : "distinguished", ""});
  };

  bool same_order = x["prime"] == y["prime"] && x["log_order"] == y["log_order"];
  push({"order", same_order ? "equal" : "distinguished", ""});

  if (x["class"] == y["class"]) {
    push({"class", "equal", ""});
  } else {
    int lo = std::min(x["class"].get<int>(), y["class"].get<int>());
    auto applies = [](const Json& r) {
      const Json& t = r["lower_central_types"];
      return !unavailable(t) && t["applicable"].get<bool>();
    };
    if (lo <= 2 || applies(x) || applies(y))
      push({"class", "distinguished", "class at most 2 or two-generator hypotheses hold"});
    else
      push({"class", "uncertified", "class is not known to be an invariant here"});
  }
  plain("generator_count");
  plain("abelianization");
  plain("frattini_rank");
  plain("dimension_ranks");
  plain("gamma_type");

  if (unavailable(x["sandling_quotient"]) || unavailable(y["sandling_quotient"]))
    push({"sandling_quotient", "unavailable", ""});
  else
    push(compare_quotients("sandling_quotient", x["sandling_quotient"], y["sandling_quotient"], a.sandling,
                           b.sandling, iso_budget));

  plain("jen");

  if (unavailable(x["two_generated"]) || unavailable(y["two_generated"])) {
    push({"two_generated", "unavailable", ""});
  } else if (x["two_generated"]["holds"] != y["two_generated"]["holds"]) {
    push({"two_generated", "distinguished", "generator counts differ"});
  } else if (!x["two_generated"]["holds"].get<bool>()) {
    push({"two_generated", "not-applicable", ""});
  } else {
    push(compare_quotients("two_generated", x["two_generated"], y["two_generated"], a.two_gen, b.two_gen,
                           iso_budget));
  }

  const Json& bx = x["baginski"];
  const Json& by = y["baginski"];
  if (unavailable(bx) || unavailable(by)) {
    push({"baginski", "unavailable", ""});
  } else if (!bx["applicable"].get<bool>() || !by["applicable"].get<bool>()) {
    push({"baginski", "not-applicable", "cyclicity hypothesis fails on at least one side"});
  } else {
    push(compare_quotients("baginski", bx, by, a.baginski, b.baginski, iso_budget));
  }

  const Json& lx = x["lower_central_types"];
  const Json& ly = y["lower_central_types"];
  if (unavailable(lx) || unavailable(ly)) {
    push({"lower_central_types", "unavailable", ""});
  } else if (!lx["applicable"].get<bool>() && !ly["applicable"].get<bool>()) {
    push({"lower_central_types", "not-applicable", ""});
  } else {
    bool same = lx["class"] == ly["class"] && lx["terms"] == ly["terms"];
    push({"lower_central_types", same ? "equal" : "distinguished", ""});
  }

  plain("roggenkamp");

  const Json& ox = x["obelisk"];
  const Json& oy = y["obelisk"];
  if (unavailable(ox) || unavailable(oy)) {
    push({"obelisk", "unavailable", ""});
  } else if (a.prime <= 3) {
    push({"obelisk", "not-applicable", "obelisks are only considered for p > 3"});
  } else if (ox["is_obelisk"] != oy["is_obelisk"]) {
    push({"obelisk", "distinguished", "exactly one group is an obelisk"});
  } else if (ox["is_obelisk"].get<bool>() && ox["framed"] != oy["framed"]) {
    push({"obelisk", "distinguished", "framed status differs"});
  } else {
    push({"obelisk", "equal", ""});
  }

  plain("truncated_fingerprint");

  bool any_unavailable = false;
  out.verdict = CompareVerdict::indistinguishable;
  for (const auto& f : out.fields) {
    if (f.outcome == "distinguished") out.verdict = CompareVerdict::distinguished;
    if (f.outcome == "unavailable") any_unavailable = true;
  }
  if (out.verdict != CompareVerdict::distinguished && any_unavailable) out.verdict = CompareVerdict::inconclusive;
  return out;
}

}  // namespace mipkit
