#include "mipkit/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "mipkit/algebra.hpp"
#include "mipkit/catalog.hpp"
#include "mipkit/error.hpp"
#include "mipkit/invariants.hpp"
#include "mipkit/jennings.hpp"
#include "mipkit/obelisk.hpp"
#include "mipkit/smallalg.hpp"

namespace mipkit {

namespace {

std::vector<int> log_orders(const std::vector<Subgroup>& series) {
  std::vector<int> out;
  for (const auto& s : series) out.push_back(s.log_order());
  return out;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

std::string read_witness(const std::string& path) {
  std::ifstream in(path);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  auto embedded = embedded_fixture(std::filesystem::path(path).filename().string());
  if (!embedded) throw UsageError("cannot open witness " + path);
  return *embedded;
}

int cmd_series(const std::string& file, bool json, std::ostream& out) {
  auto g = load_presentation(file).group;
  auto whole = Subgroup::whole(g);
  Json j;
  j["prime"] = g.prime();
  j["log_order"] = g.log_order();
  j["class"] = nilpotency_class(whole);
  j["rank"] = rank(whole);
  j["exponent_log"] = exponent_log(whole);
  j["lower_central"] = log_orders(lower_central_series(whole));
  j["upper_central"] = log_orders(upper_central_series(g));
  j["frattini"] = frattini(whole).log_order();
  j["agemo"] = agemo(whole).log_order();
  j["gamma_cap"] = gamma_cap(g).log_order();
  j["dimension"] = log_orders(dimension_series(g));
  if (json) {
    print_json(out, j);
    return kExitOk;
  }
  out << fmt::format("order {}^{}, class {}, rank {}, exponent {}^{}\n", g.prime(), g.log_order(),
                     j["class"].get<int>(), j["rank"].get<int>(), g.prime(), j["exponent_log"].get<int>());
  out << fmt::format("lower central  {}\n", j["lower_central"].get<std::vector<int>>());
  out << fmt::format("upper central  {}\n", j["upper_central"].get<std::vector<int>>());
  out << fmt::format("dimension      {}\n", j["dimension"].get<std::vector<int>>());
  out << fmt::format("frattini {}, agemo {}, Z cap gamma_2 {}\n", j["frattini"].get<int>(), j["agemo"].get<int>(),
                     j["gamma_cap"].get<int>());
  return kExitOk;
}

int cmd_jennings(const std::string& file, bool json, std::ostream& out) {
  auto g = load_presentation(file).group;
  auto jd = jennings(g);
  std::vector<std::string> tuple;
  for (const auto& x : jd.tuple) tuple.push_back(x.str());
  Json j;
  j["prime"] = g.prime();
  j["log_order"] = g.log_order();
  j["dims"] = jd.dims;
  j["tuple"] = tuple;
  j["weights"] = jd.weights;
  j["monomials_by_weight"] = monomial_weight_counts(jd);
  j["lie_signature"] = signature_json(JenLieAlgebra(jd).signature());
  if (json) {
    print_json(out, j);
    return kExitOk;
  }
  out << fmt::format("dims      {}\n", jd.dims);
  out << fmt::format("weights   {}\n", jd.weights);
  for (std::size_t i = 0; i < tuple.size(); ++i) out << fmt::format("  x{} = {}\n", i + 1, tuple[i]);
  out << fmt::format("monomials by weight {}\n", j["monomials_by_weight"].get<std::vector<int>>());
  return kExitOk;
}

// Compares dim I^n from the regular representation with the count of
// Jennings monomials of weight at least n.
int cmd_ideal_dims(const std::string& file, int max_n, bool json, std::ostream& out) {
  if (max_n < 1) throw UsageError("--max must be at least 1");
  auto g = load_presentation(file).group;
  GroupAlgebra a(g);
  auto counts = monomial_weight_counts(jennings(g));
  Json rows = Json::array();
  bool all = true;
  for (int n = 1; n <= max_n; ++n) {
    int brute = ideal_power_basis(a, n).dim();
    int predicted = 0;
    for (std::size_t w = 0; w < counts.size(); ++w)
      if (static_cast<int>(w) + 1 >= n) predicted += counts[w];
    bool match = brute == predicted;
    all = all && match;
    rows.push_back(Json{{"n", n}, {"dim", brute}, {"jennings", predicted}, {"match", match}});
  }
  if (json) {
    print_json(out, Json{{"rows", rows}, {"match", all}});
  } else {
    out << "n  dim I^n  jennings\n";
    for (const auto& r : rows)
      out << fmt::format("{:<2} {:<8} {}{}\n", r["n"].get<int>(), r["dim"].get<int>(), r["jennings"].get<int>(),
                         r["match"].get<bool>() ? "" : "  MISMATCH");
  }
  return all ? kExitOk : kExitNegative;
}

void print_flat(std::ostream& out, const Json& j) {
  for (const auto& [k, v] : j.items()) out << fmt::format("{}: {}\n", k, v.dump());
}

int cmd_invariants(const std::string& file, bool json, int truncation, std::ostream& out) {
  auto g = load_presentation(file).group;
  auto rep = battery(g, BatteryOptions{truncation});
  if (json)
    print_json(out, rep.json);
  else
    print_flat(out, rep.json);
  return kExitOk;
}

int cmd_compare(const std::string& fa, const std::string& fb, bool json, int truncation, std::ostream& out) {
  auto ga = load_presentation(fa).group;
  auto gb = load_presentation(fb).group;
  BatteryOptions opts{truncation};
  auto fut = std::async(std::launch::async, [&] { return battery(gb, opts); });
  auto ra = battery(ga, opts);
  auto rb = fut.get();
  auto res = compare(ra, rb);
  if (json) {
    print_json(out, res.to_json());
  } else {
    for (const auto& f : res.fields)
      out << fmt::format("{:<24} {}{}\n", f.field, f.outcome, f.detail.empty() ? "" : "  (" + f.detail + ")");
    out << "verdict: " << to_string(res.verdict) << "\n";
  }
  switch (res.verdict) {
    case CompareVerdict::distinguished: return kExitNegative;
    case CompareVerdict::inconclusive: return kExitResource;
    default: return kExitOk;
  }
}

int cmd_obelisk(const std::string& file, bool json, std::ostream& out) {
  auto g = load_presentation(file).group;
  auto rep = obelisk_report(g);
  bool ok = true;
  Json j;
  j["predicate"] = rep.predicate;
  j["is_obelisk"] = rep.is_obelisk;
  j["class"] = rep.cls;
  if (rep.warning) j["warning"] = *rep.warning;
  if (rep.ranks) {
    j["rank_pattern"] = {{"pass", rep.ranks->pass}, {"ranks", rep.ranks->ranks}, {"failures", rep.ranks->failures}};
    ok = ok && rep.ranks->pass;
  }
  if (!rep.dimension_rows.empty()) {
    Json rows = Json::array();
    for (const auto& r : rep.dimension_rows) {
      rows.push_back(Json{{"n", r.n}, {"m", r.m}, {"d_log_order", r.d_log_order},
                          {"gamma_log_order", r.gamma_log_order}, {"match", r.match}});
      ok = ok && r.match;
    }
    j["dimension_series"] = rows;
  }
  if (rep.framed) {
    j["framed"] = {{"framed", rep.framed->by_generators},
                   {"by_lie_images", rep.framed->by_lie_images},
                   {"maximal_generator_counts", rep.framed->maximal_generator_counts},
                   {"exceptional", rep.framed->exceptional}};
  }
  j["verified"] = ok;
  if (json) {
    print_json(out, j);
  } else {
    out << fmt::format("obelisk: {} (literal predicate {}), class {}\n", rep.is_obelisk ? "yes" : "no",
                       rep.predicate ? "holds" : "fails", rep.cls);
    if (rep.warning) out << "warning: " << *rep.warning << "\n";
    if (rep.ranks)
      out << fmt::format("rank pattern {} {}\n", rep.ranks->ranks, rep.ranks->pass ? "PASS" : "FAIL");
    for (const auto& r : rep.dimension_rows)
      out << fmt::format("  D_{:<3} m={:<3} log|D_n|={:<3} log|gamma_m|={:<3} {}\n", r.n, r.m, r.d_log_order,
                         r.gamma_log_order, r.match ? "ok" : "MISMATCH");
    if (rep.framed)
      out << fmt::format("framed: {} ({} exceptional maximal subgroups)\n", rep.framed->by_generators ? "yes" : "no",
                         rep.framed->exceptional);
  }
  return ok ? kExitOk : kExitNegative;
}

int cmd_smallalg_check(const std::string& file, int pairs, bool brute, std::uint64_t seed, bool json,
                       std::ostream& out) {
  auto g = load_presentation(file).group;
  SmallAlgebraModel m(g);
  auto rep = structure_report(m, brute, pairs, seed);
  if (json) {
    Json clauses = Json::array();
    for (const auto& c : rep.clauses) clauses.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    print_json(out, Json{{"clauses", clauses}, {"pass", rep.all_pass()}});
  } else {
    for (const auto& c : rep.clauses)
      out << fmt::format("{} {}{}\n", c.pass ? "PASS" : "FAIL", c.name, c.detail.empty() ? "" : "  " + c.detail);
  }
  return rep.all_pass() ? kExitOk : kExitNegative;
}

int cmd_smallalg_verify(const std::string& fg, const std::string& fh, const std::string& wit, bool json,
                        std::ostream& out) {
  auto g = load_presentation(fg).group;
  auto h = load_presentation(fh).group;
  auto w = parse_witness(read_witness(wit));
  auto rep = verify_witness(g, h, w);
  if (json) {
    Json rel = Json::array();
    for (const auto& r : rep.relations)
      rel.push_back(Json{{"relation", r.relation}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"ok", r.ok}});
    Json j{{"verdict", to_string(rep.verdict)},
           {"images", rep.images},
           {"relations", rel},
           {"image_log_order", rep.image_log_order},
           {"expected_log_order", rep.expected_log_order},
           {"meets_a_trivially", rep.meets_a_trivially}};
    j["spans_small_algebra"] = rep.spans_small_algebra ? Json(*rep.spans_small_algebra) : Json(nullptr);
    if (!rep.reason.empty()) j["reason"] = rep.reason;
    print_json(out, j);
  } else {
    for (const auto& img : rep.images) out << img << "\n";
    for (const auto& r : rep.relations)
      out << fmt::format("{} {}  ({} vs {})\n", r.ok ? "ok  " : "FAIL", r.relation, r.lhs, r.rhs);
    out << fmt::format("image order {}^{} (expected {}^{}), meets A trivially: {}\n", g.prime(), rep.image_log_order,
                       g.prime(), rep.expected_log_order, rep.meets_a_trivially ? "yes" : "no");
    if (rep.spans_small_algebra)
      out << fmt::format("spans small group algebra: {}\n", *rep.spans_small_algebra ? "yes" : "no");
    if (!rep.reason.empty()) out << "reason: " << rep.reason << "\n";
    out << to_string(rep.verdict) << "\n";
  }
  return rep.verdict == WitnessVerdict::pass ? kExitOk : kExitNegative;
}

int cmd_catalog_list(std::ostream& out) {
  for (const auto& e : catalog()) {
    auto pres = catalog_presentation(e.name);
    out << fmt::format("{:<20} {}^{}\n", e.name, pres.group.prime(), pres.group.log_order());
  }
  return kExitOk;
}

int cmd_catalog_show(const std::string& name, std::ostream& out) {
  out << catalog_entry(name).text;
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modular group algebra invariants of finite p-groups", "mipkit"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Seed for randomized checks");

  std::string file, file_b, witness, catalog_name;
  bool json = false;
  int max_n = 0;
  int truncation = 4;
  int pairs = 200;
  bool no_brute = false;
  std::function<int()> action;

  auto* series = app.add_subcommand("series", "Central and dimension series");
  series->add_option("file", file, "Presentation file or catalog:<name>")->required();
  series->add_flag("--json", json);
  series->callback([&] { action = [&] { return cmd_series(file, json, out); }; });

  auto* jen = app.add_subcommand("jennings", "Jennings basis and restricted Lie algebra");
  jen->add_option("file", file)->required();
  jen->add_flag("--json", json);
  jen->callback([&] { action = [&] { return cmd_jennings(file, json, out); }; });

  auto* alg = app.add_subcommand("algebra", "Group algebra computations");
  alg->require_subcommand(1);
  auto* dims = alg->add_subcommand("ideal-dims", "Dimensions of powers of the augmentation ideal");
  dims->add_option("file", file)->required();
  dims->add_option("--max", max_n, "Largest power")->required();
  dims->add_flag("--json", json);
  dims->callback([&] { action = [&] { return cmd_ideal_dims(file, max_n, json, out); }; });

  auto* inv = app.add_subcommand("invariants", "Invariant battery");
  inv->add_option("file", file)->required();
  inv->add_flag("--json", json);
  inv->add_option("--truncation", truncation, "Truncation level of the Lie fingerprint");
  inv->callback([&] { action = [&] { return cmd_invariants(file, json, truncation, out); }; });

  auto* cmp = app.add_subcommand("compare", "Compare the invariant batteries of two groups");
  cmp->add_option("a", file)->required();
  cmp->add_option("b", file_b)->required();
  cmp->add_flag("--json", json);
  cmp->add_option("--truncation", truncation);
  cmp->callback([&] { action = [&] { return cmd_compare(file, file_b, json, truncation, out); }; });

  auto* ob = app.add_subcommand("obelisk", "Obelisk detection and verification");
  ob->add_option("file", file)->required();
  ob->add_flag("--json", json);
  ob->callback([&] { action = [&] { return cmd_obelisk(file, json, out); }; });

  auto* sa = app.add_subcommand("smallalg", "Small group algebra");
  sa->require_subcommand(1);
  auto* check = sa->add_subcommand("check", "Structure of the unit group G x| A");
  check->add_option("file", file)->required();
  check->add_option("--pairs", pairs, "Random element pairs for the brute cross-check");
  check->add_flag("--no-brute", no_brute, "Skip the quotient algebra cross-check");
  check->add_flag("--json", json);
  check->callback([&] { action = [&] { return cmd_smallalg_check(file, pairs, !no_brute, seed, json, out); }; });
  auto* verify = sa->add_subcommand("verify", "Check an explicit group base witness");
  verify->add_option("G", file)->required();
  verify->add_option("H", file_b)->required();
  verify->add_option("--witness", witness, "Witness file")->required();
  verify->add_flag("--json", json);
  verify->callback([&] { action = [&] { return cmd_smallalg_verify(file, file_b, witness, json, out); }; });

  auto* cat = app.add_subcommand("catalog", "Built-in presentations");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "List catalog groups");
  list->callback([&] { action = [&] { return cmd_catalog_list(out); }; });
  auto* show = cat->add_subcommand("show", "Print a catalog presentation");
  show->add_option("name", catalog_name)->required();
  show->callback([&] { action = [&] { return cmd_catalog_show(catalog_name, out); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InconsistentPresentation& e) {
    err << "inconsistent presentation: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource bound: " << e.what() << "\n";
    return kExitResource;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace mipkit
