#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "polyrank/geometry.hpp"
#include "polyrank/nullstellensatz.hpp"
#include "polyrank/padic.hpp"
#include "polyrank/universality.hpp"

namespace polyrank::cli {

ordered_json to_json(const Rational& r) {
  return {{"num", boost::multiprecision::numerator(r).str()}, {"den", boost::multiprecision::denominator(r).str()}};
}

ordered_json to_json(const BigInt& b) { return b.str(); }

ordered_json to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json to_json_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

ordered_json to_json(const Point& p) {
  ordered_json a = ordered_json::array();
  for (Elem e : p) a.push_back(e);
  return a;
}

ordered_json to_json(const RankEstimate& e) {
  ordered_json j;
  j["lower"] = to_json_real(e.lower);
  j["lower_int"] = e.lower_int();
  j["lower_source"] = to_string(e.lower_source);
  j["upper"] = e.upper ? ordered_json(*e.upper) : ordered_json(nullptr);
  j["exact"] = e.exact();
  j["certificate"] = e.certificate ? ordered_json(e.certificate->to_string()) : ordered_json(nullptr);
  j["note"] = e.note;
  return j;
}

namespace {

bool integer_text(const ordered_json& v) {
  if (!v.is_string()) return false;
  const std::string s = v.get<std::string>();
  std::size_t i = s.size() > 1 && s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

bool rationals_ok(const ordered_json& j) {
  if (j.is_object()) {
    if (j.size() == 2 && j.contains("num") && j.contains("den"))
      return integer_text(j["num"]) && integer_text(j["den"]) && j["den"].get<std::string>() != "0";
    for (const auto& [k, v] : j.items())
      if (!rationals_ok(v)) return false;
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (!rationals_ok(v)) return false;
  }
  return true;
}

}  // namespace

bool validate_report(const ordered_json& r, std::string* why) {
  auto no = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  if (!r.is_object()) return no("report is not an object");
  if (r.value("schema", "") != kReportSchema) return no("schema tag");
  for (const char* k : {"tool_version", "command", "status"})
    if (!r.contains(k) || !r[k].is_string()) return no(std::string("missing ") + k);
  if (r["status"] == "ok") {
    for (const char* k : {"instance", "parameters", "budget", "result", "timing"})
      if (!r.contains(k) || !r[k].is_object()) return no(std::string("missing ") + k);
    if (!r["instance"].contains("digest")) return no("missing digest");
  } else if (!r.contains("error")) {
    return no("error report without error");
  }
  if (!rationals_ok(r)) return no("malformed rational");
  return true;
}

namespace {

// Parsed flags; not every subcommand reads every field.
struct Flags {
  std::string input;
  std::uint64_t budget = kDefaultBudget;
  unsigned shards = 1;
  std::string poly, collection, target_poly, second_poly, table, kind;
  std::vector<unsigned> target, a_vec;
  unsigned a = 1, m = 2, levels = 3, max_r = 4, cap = 1, extra_degree = 0, degbound = 0, trials = 16,
           sample = 16, smoothness = 0, level_m = 1;
  long s = 2;
  std::uint64_t seed = 1;
  std::int64_t character = -1;
  bool probe = false, bezout = false, fourier = false, mainp = false, no_rank = false;
  std::string member, vanishes;
};

EnumOptions enum_opts(const Flags& f) { return EnumOptions{f.budget, f.shards}; }

Point target_point(const Flags& f, const PolyCollection& c, const Ring& r) {
  if (f.target.empty()) return Point(c.size(), 0);
  if (f.target.size() != c.size()) throw InputError("--target needs one value per polynomial");
  Point t;
  for (unsigned v : f.target) {
    if (v >= r.size()) throw InputError("--target entry outside the ring");
    t.push_back(v);
  }
  return t;
}

const MultiPoly& need_poly(const Instance& inst, const Flags& f) {
  if (f.poly.empty()) throw InputError("--poly is required");
  return inst.poly(f.poly);
}

PolyCollection need_collection(const Instance& inst, const Flags& f) {
  if (!f.collection.empty()) return inst.collection(f.collection);
  if (!f.poly.empty()) return PolyCollection({inst.poly(f.poly)});
  throw InputError("--collection (or --poly) is required");
}

ordered_json bias_json(const BiasValue& b) {
  ordered_json j;
  j["value"] = to_json(b.value);
  j["magnitude"] = b.magnitude;
  j["exact_zero"] = b.exact_zero;
  j["analytic_rank"] = to_json_real(b.analytic_rank());
  ordered_json exact = ordered_json::array();
  for (const auto& c : b.sum.canonical()) exact.push_back(c.str());
  j["phase_sum"] = {{"modulus", b.sum.modulus()}, {"basis_coordinates", exact}};
  j["domain_points"] = to_json(b.domain_cardinality);
  return j;
}

ordered_json table_json(const FunctionTable& f) {
  ordered_json pts = ordered_json::array();
  for (std::size_t k = 0; k < f.size(); ++k) pts.push_back({{"point", to_json(f.domain()[k])}, {"value", f.values()[k]}});
  return pts;
}

using Handler = std::function<ordered_json(const Instance&, const Flags&, ordered_json& params)>;

ordered_json cmd_bias(const Instance& inst, const Flags& f, ordered_json& params) {
  if (!f.collection.empty()) {
    const PolyCollection c = inst.collection(f.collection);
    Point a;
    for (unsigned v : f.a_vec) a.push_back(inst.ring.from_int(v));
    if (a.empty()) a.assign(c.size(), 1);
    if (a.size() != c.size()) throw InputError("--avec needs one entry per polynomial");
    params["collection"] = f.collection;
    params["a"] = to_json(a);
    return bias_json(bias(value_histogram(c, enum_opts(f)), a));
  }
  const MultiPoly& p = need_poly(inst, f);
  params["poly"] = f.poly;
  params["a"] = f.a;
  return bias_json(bias(p, enum_opts(f), inst.ring.from_int(f.a)));
}

ordered_json nu_json(const UniformityReport& u) {
  ordered_json j;
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < u.nu.size(); ++k)
    rows.push_back({{"t", to_json(value_from_key(u.histogram.ring, u.histogram.c, k))},
                    {"count", to_json(u.histogram.counts[k])},
                    {"nu", to_json(u.nu[k])}});
  j["table"] = rows;
  j["max_deviation"] = to_json(u.max_deviation);
  j["best_s"] = u.best_s ? ordered_json(*u.best_s) : ordered_json(nullptr);
  return j;
}

ordered_json cmd_nu(const Instance& inst, const Flags& f, ordered_json& params) {
  const PolyCollection c = need_collection(inst, f);
  params["collection"] = f.collection.empty() ? f.poly : f.collection;
  ordered_json j = nu_json(nu_table(c, enum_opts(f)));
  if (f.fourier) {
    const FourierReport fr = fourier_check(c, enum_opts(f));
    j["fourier"] = {{"transforms_agree", fr.transforms_agree},
                    {"max_transform_gap", fr.max_transform_gap},
                    {"reconstruction_exact", fr.reconstruction_exact},
                    {"deviation_bound", fr.deviation_bound},
                    {"deviation_bound_holds", fr.deviation_bound_holds},
                    {"max_nontrivial_bias", fr.max_nontrivial_bias},
                    {"equidistribution_holds", fr.equidistribution_holds}};
  }
  params["fourier"] = f.fourier;
  return j;
}

ordered_json cmd_gowers(const Instance& inst, const Flags& f, ordered_json& params) {
  const MultiPoly& p = need_poly(inst, f);
  params["poly"] = f.poly;
  params["m"] = f.m;
  const GowersValue g = gowers_norm(p, f.m, enum_opts(f));
  return {{"average", g.average}, {"norm", g.norm}, {"points", to_json(g.points)}};
}

ordered_json cmd_rank(const Instance& inst, const Flags& f, ordered_json& params) {
  const RankOptions ro{enum_opts(f), f.max_r};
  params["max_r"] = f.max_r;
  if (!f.collection.empty()) {
    params["collection"] = f.collection;
    const CollectionRank cr = collection_rank_bounds(inst.collection(f.collection), ro);
    return {{"estimate", to_json(cr.estimate)},
            {"minimizing_a", to_json(cr.minimizing_a)},
            {"minimizing_poly", cr.minimizing_poly.to_string()}};
  }
  params["poly"] = f.poly;
  return {{"estimate", to_json(schmidt_rank_bounds(need_poly(inst, f), ro))}};
}

ordered_json cmd_ncrank(const Instance& inst, const Flags& f, ordered_json& params) {
  params["poly"] = f.poly;
  params["max_r"] = f.max_r;
  return {{"estimate", to_json(nc_rank_bounds(need_poly(inst, f), RankOptions{enum_opts(f), f.max_r}))}};
}

ordered_json cmd_tau(const Instance& inst, const Flags& f, ordered_json& params) {
  const PolyCollection c = need_collection(inst, f);
  const Point t = target_point(f, c, inst.ring);
  params["collection"] = f.collection.empty() ? f.poly : f.collection;
  params["target"] = to_json(t);
  params["levels"] = f.levels;
  const TauSequence ts = tau_sequence(c, t, f.levels, enum_opts(f));
  ordered_json rows = ordered_json::array();
  for (std::size_t k = 0; k < ts.levels.size(); ++k)
    rows.push_back({{"l", ts.levels[k]}, {"count", to_json(ts.counts[k])}, {"tau", to_json(ts.ratios[k])}});
  return {{"q", ts.q}, {"n", ts.n}, {"c", ts.c}, {"levels", rows}};
}

ordered_json cmd_fibers(const Instance& inst, const Flags& f, ordered_json& params) {
  const PolyCollection c = need_collection(inst, f);
  params["collection"] = f.collection.empty() ? f.poly : f.collection;
  const EnumOptions eo = enum_opts(f);
  ordered_json j;
  if (f.bezout) {
    params["bezout"] = true;
    const BezoutReport b = bezout_rough_bound_check(c, eo);
    ordered_json viol = ordered_json::array();
    for (const auto& v : b.violations) viol.push_back({{"t", to_json(v.target)}, {"count", to_json(v.count)}});
    j["bezout"] = {{"bound", to_json(b.bound)},       {"degree_product", b.degree_product},
                   {"max_count", to_json(b.max_count)}, {"argmax", to_json(b.argmax)},
                   {"max_tau1", to_json(b.max_tau1)},   {"holds", b.holds},
                   {"violations", viol}};
    return j;
  }
  const Point t = target_point(f, c, inst.ring);
  params["target"] = to_json(t);
  params["sample"] = f.sample;
  const FiberResult fr = fiber_points(c, t, eo, f.sample);
  ordered_json pts = ordered_json::array();
  for (const auto& p : fr.sample) pts.push_back(to_json(p));
  j["count"] = fr.count;
  j["sample"] = pts;
  if (f.smoothness > 0) {
    params["smoothness"] = f.smoothness;
    const SmoothnessSample s = jacobian_smoothness(c, t, f.smoothness, eo);
    ordered_json sing = ordered_json::array();
    for (const auto& p : s.singular_points) sing.push_back(to_json(p));
    j["smoothness"] = {{"inspected", s.inspected},
                       {"full_rank", s.full_rank},
                       {"deficient", s.deficient},
                       {"smooth_fraction", s.smooth_fraction()},
                       {"singular_points", sing}};
  }
  return j;
}

ordered_json cert_json(const MembershipCertificate& c) {
  ordered_json cof = ordered_json::array();
  for (const auto& r : c.cofactors) cof.push_back(r.to_string());
  return {{"degbound", c.degbound}, {"cofactors", cof}};
}

ordered_json cmd_nullstellensatz(const Instance& inst, const Flags& f, ordered_json& params) {
  const PolyCollection c = need_collection(inst, f);
  params["collection"] = f.collection.empty() ? f.poly : f.collection;
  const EnumOptions eo = enum_opts(f);
  ordered_json j;
  if (!f.vanishes.empty()) {
    params["vanishes"] = f.vanishes;
    j["vanishes"] = vanishes_on_points(inst.poly(f.vanishes), c, eo);
  }
  if (!f.member.empty()) {
    params["member"] = f.member;
    params["degbound"] = f.degbound;
    const auto cert = ideal_membership(inst.poly(f.member), c, f.degbound, eo);
    j["member"] = cert.has_value();
    j["certificate"] = cert ? cert_json(*cert) : ordered_json(nullptr);
  }
  if (f.probe) {
    params["probe"] = true;
    params["a"] = f.a;
    params["extra_degree"] = f.extra_degree;
    const NullstellensatzReport r = nullstellensatz_probe(c, f.a, ProbeOptions{eo, f.extra_degree, !f.no_rank});
    ordered_json kern = ordered_json::array();
    for (std::size_t k = 0; k < r.kernel.size(); ++k)
      kern.push_back({{"q", r.kernel[k].to_string()},
                      {"certificate", r.membership[k] ? cert_json(*r.membership[k]) : ordered_json(nullptr)}});
    j["probe"] = {{"points", r.points},
                  {"monomials", r.monomials},
                  {"evaluation_rank", r.evaluation_rank},
                  {"kernel_dimension", r.kernel.size()},
                  {"certified", r.certified},
                  {"fraction_certified", to_json(Rational(static_cast<long long>(r.certified),
                                                          static_cast<long long>(std::max<std::size_t>(r.kernel.size(), 1))) +
                                                 (r.kernel.empty() ? Rational(1) : Rational(0)))},
                  {"kernel", kern},
                  {"rank", r.rank ? to_json(*r.rank) : ordered_json(nullptr)}};
  }
  if (j.is_null()) throw InputError("nothing to do: give --probe, --member or --vanishes");
  return j;
}

ordered_json cmd_padic(const Instance& inst, const Flags& f, ordered_json& params) {
  const EnumOptions eo = enum_opts(f);
  params["s"] = f.s;
  if (f.mainp) {
    params["mainp"] = true;
    params["collection"] = f.collection;
    const PolyCollection c = need_collection(inst, f);
    const MainpReport r = mainp_probe(c.polys(), f.s, eo);
    ordered_json pts = ordered_json::array();
    for (const auto& p : r.points)
      pts.push_back({{"poly", p.poly.to_string()},
                     {"rank_lower", to_json_real(p.rank_lower)},
                     {"degenerate", p.degenerate},
                     {"low_characteristic", p.low_characteristic},
                     {"max_normalized", p.max_normalized}});
    return {{"points", pts}, {"frontier", r.frontier ? to_json_real(*r.frontier) : ordered_json(nullptr)}};
  }
  const MultiPoly& p = need_poly(inst, f);
  params["poly"] = f.poly;
  const Ring& ring = inst.ring;
  if (f.character >= 0) {
    params["character"] = f.character;
    const PadicCharacter chi{ring.characteristic_prime(), ring.kind() == RingKind::PrimePower ? ring.exponent() : 1u,
                             static_cast<Elem>(f.character)};
    ordered_json j = bias_json(padic_bias(p, chi, eo));
    j["depth"] = chi.depth();
    return j;
  }
  const PadicBiasReport r = padic_uniformity(p, f.s, eo);
  ordered_json chars = ordered_json::array();
  for (const auto& cb : r.characters)
    chars.push_back({{"c", cb.c},
                     {"depth", cb.depth},
                     {"magnitude", cb.magnitude},
                     {"exact_zero", cb.exact_zero},
                     {"threshold", to_json(cb.threshold)},
                     {"normalized", cb.normalized},
                     {"below", cb.below}});
  ordered_json nu = ordered_json::array();
  for (const auto& v : r.nu) nu.push_back(to_json(v));
  return {{"p", r.p},
          {"l", r.l},
          {"characters", chars},
          {"nu", nu},
          {"deviation", to_json(r.deviation)},
          {"hypothesis", r.hypothesis},
          {"implication_checked", r.implication_checked},
          {"implication_holds", r.implication_holds},
          {"max_normalized", r.max_normalized}};
}

ordered_json cmd_ratsing(const Instance& inst, const Flags& f, ordered_json& params) {
  params["poly"] = f.poly;
  const SingularityReport r = rational_singularity_check(need_poly(inst, f), enum_opts(f));
  ordered_json lv = ordered_json::array();
  for (const auto& l : r.levels)
    lv.push_back({{"m", l.m},
                  {"count", to_json(l.count)},
                  {"expected", to_json(l.expected)},
                  {"deviation", to_json(l.deviation)},
                  {"passes", l.passes}});
  return {{"p", r.p}, {"levels", lv}, {"all_pass", r.all_pass}};
}

ordered_json cmd_pullback(const Instance& inst, const Flags& f, ordered_json& params) {
  if (f.target_poly.empty()) throw InputError("--target-poly is required");
  params["poly"] = f.poly;
  params["target_poly"] = f.target_poly;
  params["trials"] = f.trials;
  params["seed"] = f.seed;
  PullbackOptions po{enum_opts(f), f.trials, f.seed};
  const MultiPoly& p = need_poly(inst, f);
  const PullbackResult r = affine_pullback_search(p, inst.poly(f.target_poly), po);
  ordered_json j{{"status", to_string(r.status)}, {"stage", r.stage}, {"maps_tried", r.maps_tried}};
  j["map"] = r.map ? ordered_json(r.map->to_string(inst.ring)) : ordered_json(nullptr);
  return j;
}

ordered_json cmd_weakpoly(const Instance& inst, const Flags& f, ordered_json& params) {
  const EnumOptions eo = enum_opts(f);
  params["a"] = f.a;
  params["cap"] = f.cap;
  if (!f.table.empty()) {
    params["table"] = f.table;
    const FunctionTable& t = inst.table(f.table);
    const WeakTestResult w = is_weakly_polynomial(t, f.a, f.cap, eo);
    const auto g = extend_weakly_polynomial(t, f.a, eo);
    return {{"weakly_polynomial", w.holds},
            {"witness", w.witness ? ordered_json(w.witness->to_string()) : ordered_json(nullptr)},
            {"lines", w.lines},
            {"planes", w.planes},
            {"extension", g ? ordered_json(g->to_string()) : ordered_json(nullptr)}};
  }
  const PolyCollection c = need_collection(inst, f);
  const Point t = target_point(f, c, inst.ring);
  params["collection"] = f.collection.empty() ? f.poly : f.collection;
  params["target"] = to_json(t);
  const StarReport r = star_a_dimension_compare(c, t, f.a, f.cap, eo);
  ordered_json gap = ordered_json::array();
  for (const auto& g : r.gap) gap.push_back(table_json(g));
  return {{"points", r.points},
          {"lines", r.lines},
          {"planes", r.planes},
          {"dim_global", r.dim_global},
          {"dim_weak_upper", r.dim_weak_upper},
          {"star_holds_up_to_cap", r.equal},
          {"admissibility_e", r.admissibility_e},
          {"admissible", r.admissible},
          {"gap", gap}};
}

ordered_json cmd_probe(const Instance& inst, const Flags& f, ordered_json& params) {
  const EnumOptions eo = enum_opts(f);
  params["kind"] = f.kind;
  if (f.kind == "enrichment") {
    const PolyCollection c = need_collection(inst, f);
    params["collection"] = f.collection.empty() ? f.poly : f.collection;
    params["trials"] = f.trials;
    params["seed"] = f.seed;
    const EnrichmentResult r = derivative_enrichment_search(c, f.trials, eo, f.seed);
    ordered_json ext = ordered_json::array();
    for (const auto& p : r.extended.polys()) ext.push_back(p.to_string());
    ordered_json v = ordered_json::array(), w = ordered_json::array();
    for (const auto& x : r.v) v.push_back(to_json(x));
    for (const auto& x : r.w) w.push_back(to_json(x));
    return {{"v", v}, {"w", w}, {"extended", ext}, {"estimate", to_json(r.estimate)}};
  }
  if (f.kind == "cs-step") {
    if (f.second_poly.empty()) throw InputError("--s-poly is required");
    params["poly"] = f.poly;
    params["s_poly"] = f.second_poly;
    params["m"] = f.level_m;
    const CauchySchwarzStep r = proposition_b_cs_step(need_poly(inst, f), inst.poly(f.second_poly), f.level_m, eo);
    return {{"d", r.d},         {"l", r.l},
            {"m", r.m},         {"lhs", r.lhs},
            {"rhs", r.rhs},     {"inequality_holds", r.inequality_holds},
            {"shift_invariant", r.shift_invariant}};
  }
  if (f.kind == "fourier") {
    const PolyCollection c = need_collection(inst, f);
    params["collection"] = f.collection.empty() ? f.poly : f.collection;
    const FourierReport fr = fourier_check(c, eo);
    return {{"transforms_agree", fr.transforms_agree},
            {"max_transform_gap", fr.max_transform_gap},
            {"reconstruction_exact", fr.reconstruction_exact},
            {"deviation", to_json(fr.deviation)},
            {"deviation_bound", fr.deviation_bound},
            {"deviation_bound_holds", fr.deviation_bound_holds},
            {"max_nontrivial_bias", fr.max_nontrivial_bias},
            {"equidistribution_holds", fr.equidistribution_holds}};
  }
  throw InputError("--kind must be enrichment, cs-step or fourier");
}

ordered_json envelope(const std::string& command) {
  ordered_json r;
  r["schema"] = kReportSchema;
  r["tool_version"] = kToolVersion;
  r["command"] = command;
  return r;
}

int fail(std::ostream& out, std::ostream& err, const std::string& command, int code, const std::string& kind,
         const std::string& what) {
  ordered_json r = envelope(command);
  r["status"] = "error";
  r["error"] = {{"kind", kind}, {"message", what}, {"exit_code", code}};
  out << r.dump(2) << '\n';
  err << "polyrank: " << what << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank and bias analytics for polynomials over finite rings", "polyrank"};
  app.require_subcommand(1);
  Flags f;

  struct Entry {
    const char* name;
    const char* help;
    Handler fn;
  };
  const std::vector<Entry> commands = {
      {"bias", "bias of a polynomial or a linear combination of a collection", cmd_bias},
      {"nu", "normalized fiber sizes of a collection", cmd_nu},
      {"gowers", "Gowers U_m average of e(P)", cmd_gowers},
      {"rank", "Schmidt rank bounds with certificate", cmd_rank},
      {"ncrank", "rank bounds for the multilinear form of P", cmd_ncrank},
      {"tau", "point-count ratios over extensions", cmd_tau},
      {"fibers", "fiber size, samples, smoothness, rough bound", cmd_fibers},
      {"nullstellensatz", "vanishing, ideal membership, low-degree probe", cmd_nullstellensatz},
      {"padic", "character biases over Z/p^l", cmd_padic},
      {"ratsing", "point counts mod p^m", cmd_ratsing},
      {"pullback", "affine map with P(Ay + b) = Q", cmd_pullback},
      {"weakpoly", "weakly polynomial test, extension, weak vs global dimension", cmd_weakpoly},
      {"probe", "empirical probes: enrichment, cs-step, fourier", cmd_probe},
  };
  std::map<CLI::App*, const Entry*> by_app;
  for (const auto& e : commands) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    by_app[sub] = &e;
    sub->add_option("--input", f.input, "instance file")->required();
    sub->add_option("--budget", f.budget, "max enumerated points")->capture_default_str();
    sub->add_option("--shards", f.shards, "parallel shards (results do not depend on it)")
        ->check(CLI::Range(1u, 256u))
        ->capture_default_str();
    const std::string n = e.name;
    auto opt_poly = [&] { sub->add_option("--poly", f.poly, "polynomial name"); };
    auto opt_coll = [&] { sub->add_option("--collection", f.collection, "comma-separated polynomial names"); };
    auto opt_target = [&] { sub->add_option("--target", f.target, "fiber value, one per polynomial")->delimiter(','); };
    if (n == "bias") {
      opt_poly();
      opt_coll();
      sub->add_option("--a", f.a, "character scale for --poly")->capture_default_str();
      sub->add_option("--avec", f.a_vec, "combination for --collection")->delimiter(',');
    } else if (n == "nu") {
      opt_poly();
      opt_coll();
      sub->add_flag("--fourier", f.fourier, "also run the Fourier inversion check");
    } else if (n == "gowers") {
      opt_poly();
      sub->add_option("--m", f.m, "norm order")->capture_default_str();
    } else if (n == "rank" || n == "ncrank") {
      opt_poly();
      if (n == "rank") opt_coll();
      sub->add_option("--max-r", f.max_r, "largest rank the exhaustive stage rules out")->capture_default_str();
    } else if (n == "tau") {
      opt_poly();
      opt_coll();
      opt_target();
      sub->add_option("--levels", f.levels, "extension degrees 1..L")->capture_default_str();
    } else if (n == "fibers") {
      opt_poly();
      opt_coll();
      opt_target();
      sub->add_option("--sample", f.sample, "sample points to print")->capture_default_str();
      sub->add_option("--smoothness", f.smoothness, "Jacobian check on the first N points");
      sub->add_flag("--bezout", f.bezout, "rough bound over every fiber");
    } else if (n == "nullstellensatz") {
      opt_poly();
      opt_coll();
      sub->add_flag("--probe", f.probe, "low-degree vanishing probe");
      sub->add_option("--a", f.a, "probe degree")->capture_default_str();
      sub->add_option("--extra-degree", f.extra_degree, "membership slack")->capture_default_str();
      sub->add_flag("--no-rank", f.no_rank, "skip the rank context");
      sub->add_option("--member", f.member, "test Q in the ideal");
      sub->add_option("--degbound", f.degbound, "degree bound for --member");
      sub->add_option("--vanishes", f.vanishes, "test Q = 0 on the points");
    } else if (n == "padic") {
      opt_poly();
      opt_coll();
      sub->add_option("--s", f.s, "uniformity exponent")->capture_default_str();
      sub->add_option("--character", f.character, "single character c");
      sub->add_flag("--mainp", f.mainp, "bias against rank over the collection");
    } else if (n == "ratsing") {
      opt_poly();
    } else if (n == "pullback") {
      opt_poly();
      sub->add_option("--target-poly", f.target_poly, "Q");
      sub->add_option("--trials", f.trials, "random maps when exhaustive search is too large");
      sub->add_option("--seed", f.seed)->capture_default_str();
    } else if (n == "weakpoly") {
      opt_poly();
      opt_coll();
      opt_target();
      sub->add_option("--table", f.table, "function table name");
      sub->add_option("--a", f.a, "degree")->capture_default_str();
      sub->add_option("--cap", f.cap, "1 = lines, 2 = lines and planes")->check(CLI::Range(1u, 2u))->capture_default_str();
    } else if (n == "probe") {
      opt_poly();
      opt_coll();
      sub->add_option("--kind", f.kind, "enrichment | cs-step | fourier")->required();
      sub->add_option("--trials", f.trials)->capture_default_str();
      sub->add_option("--seed", f.seed)->capture_default_str();
      sub->add_option("--s-poly", f.second_poly, "S for cs-step");
      sub->add_option("--m", f.level_m, "level m for cs-step")->capture_default_str();
    }
  }

  std::vector<std::string> argv_store;
  argv_store.push_back("polyrank");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  std::string command = "?";
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    for (auto* sub : app.get_subcommands()) command = sub->get_name();
    return fail(out, err, command, kInput, "input", e.what());
  }
  CLI::App* sub = app.get_subcommands().front();
  command = sub->get_name();
  const Entry& entry = *by_app.at(sub);

  try {
    const Instance inst = load_instance(f.input);
    const auto t0 = std::chrono::steady_clock::now();
    ordered_json params = ordered_json::object();
    ordered_json result = entry.fn(inst, f, params);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ordered_json r = envelope(command);
    r["status"] = "ok";
    r["instance"] = {{"digest", inst.digest}, {"ring", inst.ring.descriptor()}, {"vars", inst.vars}};
    r["parameters"] = params;
    r["budget"] = {{"limit", f.budget}};
    r["result"] = result;
    r["timing"] = {{"seconds", secs}, {"shards", f.shards}};
    out << r.dump(2) << '\n';
    return kOk;
  } catch (const BudgetExceeded& e) {
    return fail(out, err, command, kBudget, "budget", e.what());
  } catch (const InputError& e) {
    return fail(out, err, command, kInput, "input", e.what());
  } catch (const PreconditionError& e) {
    return fail(out, err, command, kInput, "precondition", e.what());
  } catch (const UnsupportedCharacteristic& e) {
    return fail(out, err, command, kInput, "unsupported-characteristic", e.what());
  } catch (const std::exception& e) {
    return fail(out, err, command, kInternal, "internal", e.what());
  }
}

}  // namespace polyrank::cli
