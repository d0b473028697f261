#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhbv/chain_complex.hpp"
#include "hhbv/errors.hpp"
#include "hhbv/presentations.hpp"
#include "hhbv/suites.hpp"

namespace hhbv::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr int kMinDegree = 1;
constexpr int kMaxDegree = 8;

struct Request {
  std::string command;
  std::string group, ring = "Z";
  int degree = 6;
  std::vector<std::string> monomials;
  std::vector<std::string> suites;
  std::string format = "text";
  unsigned jobs = 1;
};

// Outcome of one subcommand: a JSON document, its text rendering, and whether every check held.
struct Result {
  Json json;
  std::string text;
  bool passed = true;
};

std::string num(long long v) { return std::to_string(v); }

int default_degree() {
  if (const char* cap = std::getenv("HHBV_DEGREE_CAP")) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(cap, &used);
      if (used == std::string_view(cap).size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError(std::string("HHBV_DEGREE_CAP is not an integer: ") + cap);
  }
  return 6;
}

GroupDescriptor parse_group(const Request& r) {
  if (r.group.empty()) throw ParseError("a group is required (-g)");
  return GroupDescriptor::parse(r.group);
}

Json header(const Request& r) {
  Json j;
  j["schema"] = "hhbv/1";
  j["command"] = r.command;
  return j;
}

Json strings(const std::vector<std::string>& v) { return Json(v); }

std::string closed_delta_route(const GradedPresentation& p) {
  return p.family == "tensor" || p.family == "fg-abelian" ? "closed-form (Koszul sum over factors)" : "closed-form";
}

// ---- present ----

Result present(const Request& r) {
  const GradedPresentation p = present_fg_abelian(parse_group(r), CoeffRingTag::parse(r.ring));
  const PresentationDocument doc = document(p, r.degree);
  Result out;
  out.json = header(r);
  out.json["family"] = doc.family;
  out.json["group"] = doc.group;
  out.json["ring"] = doc.ring;
  out.json["degree_bound"] = num(r.degree);
  Json gens = Json::array();
  for (const auto& [name, deg] : doc.generators) gens.push_back({{"name", name}, {"degree", num(deg)}});
  out.json["generators"] = gens;
  out.json["relations"] = strings(doc.relations);
  out.json["hypotheses"] = strings(doc.hypotheses);
  Json delta = Json::array();
  for (const auto& [m, v] : doc.delta_table) delta.push_back({{"monomial", m}, {"delta", v}});
  out.json["delta"] = delta;
  Json bracket = Json::array();
  for (const auto& [pair, v] : doc.bracket_table) bracket.push_back({{"left", pair.first}, {"right", pair.second}, {"bracket", v}});
  out.json["bracket"] = bracket;

  std::ostringstream t;
  t << "HH^*(" << doc.ring << "[" << doc.group << "])  family " << doc.family << "\n";
  t << "generators:";
  for (const auto& [name, deg] : doc.generators) t << " " << name << " (" << deg << ")";
  t << "\nrelations:\n";
  for (const auto& rel : doc.relations) t << "  " << rel << " = 0\n";
  if (!doc.hypotheses.empty()) {
    t << "hypotheses:\n";
    for (const auto& h : doc.hypotheses) t << "  " << h << "\n";
  }
  t << "BV operator:\n";
  for (const auto& [m, v] : doc.delta_table) t << "  D(" << m << ") = " << v << "\n";
  t << "bracket:\n";
  for (const auto& [pair, v] : doc.bracket_table) t << "  {" << pair.first << ", " << pair.second << "} = " << v << "\n";
  out.text = t.str();
  return out;
}

// ---- shared model setup for delta / bracket / compare ----

struct Setup {
  GroupDescriptor group;
  CoeffRingTag ring;
  GradedPresentation pres;
  std::unique_ptr<TensorBvModel> engine;
  std::unique_ptr<CyclicBvModel> bar;  // finite cyclic groups only
};

Setup setup(const Request& r) {
  Setup s{parse_group(r), CoeffRingTag::parse(r.ring), {}, nullptr, nullptr};
  s.pres = present_fg_abelian(s.group, s.ring);
  s.engine = std::make_unique<TensorBvModel>(s.group, s.ring);
  if (s.group.free_rank() == 0 && s.group.torsion_orders().size() == 1)
    s.bar = std::make_unique<CyclicBvModel>(s.engine->algebra());
  return s;
}

Polynomial parse_class(const GradedPresentation& p, const std::string& text) {
  const Polynomial v = p.parse(text);
  p.degree(v);  // rejects inhomogeneous input
  return v;
}

TensorCochain single_factor(const GroupRingPtr& algebra, int degree, const GroupRingElement& value) {
  TensorCochain out(algebra, degree);
  if (degree >= 0) out.add({degree}, value);
  return out;
}

GroupRingElement factor_value(const Setup& s, const Polynomial& v) {
  const TensorCochain c = encode_class(*s.engine, s.pres, v);
  return c.part({c.degree()});
}

Result delta(const Request& r) {
  if (r.monomials.size() != 1) throw ParseError("delta takes exactly one class (-m)");
  const Setup s = setup(r);
  const Polynomial input = parse_class(s.pres, r.monomials[0]);
  const int deg = s.pres.degree(input);
  const Polynomial closed = s.pres.delta(input);
  const TensorCochain engine = s.engine->delta(encode_class(*s.engine, s.pres, input));
  const bool engine_ok = s.engine->same_class(engine, encode_class(*s.engine, s.pres, closed));
  std::optional<bool> bar_ok;
  TensorCochain bar;
  if (s.bar && deg >= 1) {
    bar = single_factor(s.engine->algebra(), deg - 1, s.bar->delta(deg, factor_value(s, input)));
    bar_ok = s.engine->same_class(bar, engine);
  }

  Result out;
  out.passed = engine_ok && bar_ok.value_or(true);
  out.json = header(r);
  out.json["group"] = s.group.to_string();
  out.json["ring"] = s.ring.to_string();
  out.json["family"] = s.pres.family;
  out.json["input"] = s.pres.to_string(input);
  out.json["degree"] = num(deg);
  out.json["result"] = s.pres.to_string(closed);
  out.json["route"] = closed_delta_route(s.pres);
  Json checks = Json::array();
  checks.push_back({{"route", "small-resolution engine"}, {"cochain", engine.to_string()}, {"agreement", engine_ok}});
  if (bar_ok) checks.push_back({{"route", "bar transfer"}, {"cochain", bar.to_string()}, {"agreement", *bar_ok}});
  out.json["checks"] = checks;
  out.json["agreement"] = out.passed;

  std::ostringstream t;
  t << "D(" << s.pres.to_string(input) << ") = " << s.pres.to_string(closed) << "    [" << out.json["route"].get<std::string>()
    << ", " << s.pres.family << "]\n";
  t << "  small-resolution engine: " << engine.to_string() << (engine_ok ? "  agrees" : "  DISAGREES") << "\n";
  if (bar_ok) t << "  bar transfer: " << bar.to_string() << (*bar_ok ? "  agrees" : "  DISAGREES") << "\n";
  t << "agreement: " << (out.passed ? "true" : "false") << "\n";
  out.text = t.str();
  return out;
}

Result bracket(const Request& r) {
  if (r.monomials.size() != 2) throw ParseError("bracket takes exactly two classes (-m a -m b)");
  const Setup s = setup(r);
  const Polynomial a = parse_class(s.pres, r.monomials[0]), b = parse_class(s.pres, r.monomials[1]);
  const int da = s.pres.degree(a), db = s.pres.degree(b);
  const Polynomial via_delta = s.pres.bracket_from_delta(a, b);
  const TensorCochain reference = encode_class(*s.engine, s.pres, via_delta);

  struct Check {
    std::string route, value;
    bool agrees;
  };
  std::vector<Check> checks;
  if (const auto table = s.pres.bracket_table(a, b))
    checks.push_back({"closed-form table", s.pres.to_string(*table),
                      s.engine->same_class(encode_class(*s.engine, s.pres, *table), reference)});
  const TensorCochain engine =
      s.engine->bracket_from_delta(encode_class(*s.engine, s.pres, a), encode_class(*s.engine, s.pres, b));
  checks.push_back({"small-resolution engine (from D)", engine.to_string(), s.engine->same_class(engine, reference)});
  if (s.bar) {
    const int d = da + db - 1;
    const TensorCochain circle =
        d < 0 ? TensorCochain(s.engine->algebra(), 0)
              : single_factor(s.engine->algebra(), d, s.bar->circle_bracket(da, factor_value(s, a), db, factor_value(s, b)));
    std::string value = circle.to_string();
    if (!s.engine->same_class(circle, reference) && s.engine->is_coboundary(circle + reference)) value += " (the negative)";
    checks.push_back({"bar circle product", value, s.engine->same_class(circle, reference)});
  }

  Result out;
  out.passed = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.agrees; });
  out.json = header(r);
  out.json["group"] = s.group.to_string();
  out.json["ring"] = s.ring.to_string();
  out.json["family"] = s.pres.family;
  out.json["left"] = s.pres.to_string(a);
  out.json["right"] = s.pres.to_string(b);
  out.json["degree"] = num(da + db - 1);
  out.json["result"] = s.pres.to_string(via_delta);
  out.json["route"] = "closed-form D, -(-1)^|a| (D(ab) - D(a)b - (-1)^|a| aD(b))";
  Json js = Json::array();
  for (const auto& c : checks) js.push_back({{"route", c.route}, {"value", c.value}, {"agreement", c.agrees}});
  out.json["checks"] = js;
  out.json["agreement"] = out.passed;

  std::ostringstream t;
  t << "{" << s.pres.to_string(a) << ", " << s.pres.to_string(b) << "} = " << s.pres.to_string(via_delta)
    << "    [closed-form D, " << s.pres.family << "]\n";
  for (const auto& c : checks) t << "  " << c.route << ": " << c.value << (c.agrees ? "  agrees" : "  DISAGREES") << "\n";
  t << "agreement: " << (out.passed ? "true" : "false") << "\n";
  out.text = t.str();
  return out;
}

// ---- homology ----

std::string binomial_label(int rank, int degree) {
  long long c = 1;
  for (int i = 0; i < degree; ++i) c = c * (rank - i) / (i + 1);
  if (c == 0) return "0";
  return c == 1 ? "R[G]" : "R[G]^" + std::to_string(c);
}

Result homology(const Request& r) {
  const GroupDescriptor group = parse_group(r);
  const CoeffRingTag ring = CoeffRingTag::parse(r.ring);
  Result out;
  out.json = header(r);
  out.json["group"] = group.to_string();
  out.json["ring"] = ring.to_string();
  Json degrees = Json::array();
  std::ostringstream t;
  t << "HH^*(" << ring.to_string() << "[" << group.to_string() << "])\n";

  if (!group.is_finite()) {
    if (!group.torsion_orders().empty())
      throw DomainError("homology tables need a finite group or a free abelian group, got " + group.to_string());
    // R[Z^r] is smooth: HH^i is free over R[G] of rank C(r, i)
    out.json["method"] = "Koszul resolution, free over R[G]";
    for (int i = 0; i <= r.degree; ++i) {
      const std::string label = binomial_label(group.free_rank(), i);
      degrees.push_back({{"degree", num(i)}, {"module", label}});
      t << "  HH^" << i << " = " << label << "\n";
    }
    out.json["degrees"] = degrees;
    out.text = t.str();
    return out;
  }

  std::optional<FreeComplex> total;
  for (const auto n : group.torsion_orders()) {
    FreeComplex c = periodic_cochain_complex(static_cast<long>(n), r.degree + 1, ring);
    total = total ? tensor_total_complex(*total, c) : std::move(c);
  }
  if (!total) {
    total = FreeComplex(ring, 0, {1}, 1);
  }
  out.json["method"] = "Smith normal form of the tensor product of periodic cochain complexes";
  for (int i = 0; i <= r.degree; ++i) {
    const HomologySummary h = i <= total->highest() ? homology_at(*total, i) : HomologySummary{i, 0, {}, {}};
    Json torsion = Json::array();
    for (const auto& v : h.torsion) torsion.push_back(v.get_str());
    degrees.push_back({{"degree", num(i)}, {"free_rank", num(static_cast<long long>(h.free_rank))}, {"torsion", torsion},
                       {"module", h.to_string()}});
    t << "  HH^" << i << " = " << h.to_string() << "\n";
  }
  out.json["degrees"] = degrees;
  out.text = t.str();
  return out;
}

// ---- verify ----

Result verify(const Request& r) {
  SuiteOptions options;
  options.degree_bound = r.degree;
  options.jobs = r.jobs;
  if (!r.group.empty()) options.group = parse_group(r);
  if (!r.ring.empty()) options.ring = CoeffRingTag::parse(r.ring);

  std::vector<std::string> names = r.suites;
  if (names.empty())
    for (const auto& info : suite_catalog()) names.push_back(info.name);

  Result out;
  out.json = header(r);
  if (options.group) out.json["group"] = options.group->to_string();
  if (options.ring) out.json["ring"] = options.ring->to_string();
  out.json["degree_bound"] = num(r.degree);
  Json suites = Json::array();
  std::ostringstream t;
  for (const auto& name : names) {
    const SuiteReport rep = run_suite(name, options);
    const char* status = rep.skipped ? "SKIP" : rep.passed ? "PASS" : "FAIL";
    if (!rep.skipped && !rep.passed) out.passed = false;
    suites.push_back({{"criterion", num(rep.criterion)},
                      {"suite", rep.name},
                      {"title", rep.title},
                      {"status", status},
                      {"cases", num(static_cast<long long>(rep.cases))},
                      {"failures", num(static_cast<long long>(rep.failures))},
                      {"failure_samples", strings(rep.failure_samples)},
                      {"notes", strings(rep.notes)}});
    t << status << "  " << rep.name << "  " << rep.title << "  (" << rep.cases - rep.failures << "/" << rep.cases
      << " cases)\n";
    for (const auto& n : rep.notes) t << "      note: " << n << "\n";
    for (const auto& f : rep.failure_samples) t << "      fail: " << f << "\n";
  }
  out.json["suites"] = suites;
  out.json["passed"] = out.passed;
  t << (out.passed ? "all requested checks pass" : "some checks fail") << "\n";
  out.text = t.str();
  return out;
}

// ---- compare ----

struct Tally {
  std::size_t agree = 0, total = 0;
  void add(bool ok) {
    ++total;
    if (ok) ++agree;
  }
};

Result compare(const Request& r) {
  const Setup s = setup(r);
  const TensorBvModel& eng = *s.engine;
  const auto enc = [&](const Polynomial& v) { return encode_class(eng, s.pres, v); };
  const int top = std::min(r.degree, 3);

  std::vector<Polynomial> gens, monomials;
  for (const auto& g : s.pres.generators) gens.push_back(s.pres.generator(g.name));
  for (int d = 0; d <= top; ++d)
    for (const auto& e : s.pres.normal_monomials(d, 1)) monomials.push_back(s.pres.monomial(e));

  // rows: operation; columns: route pairs
  const std::vector<std::string> columns{"small = closed", "bar = closed", "bar = small"};
  std::map<std::string, std::vector<Tally>> rows;
  for (const char* op : {"cup", "delta", "bracket"}) rows[op].assign(columns.size(), {});
  std::vector<std::string> samples;
  const auto note = [&](bool ok, const std::string& what) {
    if (!ok && samples.size() < 8) samples.push_back(what);
  };

  for (const auto& a : gens)
    for (const auto& b : monomials) {
      const int da = s.pres.degree(a), db = s.pres.degree(b);
      if (da + db > r.degree) continue;
      const TensorCochain closed = enc(s.pres.multiply(a, b));
      const TensorCochain small = eng.cup(enc(a), enc(b));
      const bool sc = eng.same_class(small, closed);
      rows["cup"][0].add(sc);
      note(sc, "cup " + s.pres.to_string(a) + " * " + s.pres.to_string(b) + ": small vs closed");
      if (s.bar) {
        const TensorCochain bar = single_factor(eng.algebra(), da + db, s.bar->bar_cup(da, factor_value(s, a), db, factor_value(s, b)));
        const bool bc = eng.same_class(bar, closed), bs = eng.same_class(bar, small);
        rows["cup"][1].add(bc);
        rows["cup"][2].add(bs);
        note(bc, "cup " + s.pres.to_string(a) + " * " + s.pres.to_string(b) + ": bar vs closed");
      }
      const int dbr = da + db - 1;
      const TensorCochain closed_br = enc(s.pres.bracket_from_delta(a, b));
      const TensorCochain small_br = eng.bracket_from_delta(enc(a), enc(b));
      const bool sbr = eng.same_class(small_br, closed_br);
      rows["bracket"][0].add(sbr);
      note(sbr, "bracket {" + s.pres.to_string(a) + ", " + s.pres.to_string(b) + "}: small vs closed");
      if (s.bar) {
        const TensorCochain circle =
            dbr < 0 ? TensorCochain(eng.algebra(), 0)
                    : single_factor(eng.algebra(), dbr, s.bar->circle_bracket(da, factor_value(s, a), db, factor_value(s, b)));
        const bool bc = eng.same_class(circle, closed_br), bs = eng.same_class(circle, small_br);
        rows["bracket"][1].add(bc);
        rows["bracket"][2].add(bs);
        note(bc, "bracket {" + s.pres.to_string(a) + ", " + s.pres.to_string(b) + "}: circle " + circle.to_string() +
                     ", closed " + s.pres.to_string(s.pres.bracket_from_delta(a, b)));
      }
    }

  for (const auto& m : monomials) {
    const int d = s.pres.degree(m);
    const TensorCochain closed = enc(s.pres.delta(m));
    const TensorCochain small = eng.delta(enc(m));
    const bool sc = eng.same_class(small, closed);
    rows["delta"][0].add(sc);
    note(sc, "D(" + s.pres.to_string(m) + "): small vs closed");
    if (s.bar) {
      const TensorCochain bar =
          d < 1 ? TensorCochain(eng.algebra(), 0) : single_factor(eng.algebra(), d - 1, s.bar->delta(d, factor_value(s, m)));
      const bool bc = eng.same_class(bar, closed), bs = eng.same_class(bar, small);
      rows["delta"][1].add(bc);
      rows["delta"][2].add(bs);
      note(bc, "D(" + s.pres.to_string(m) + "): bar vs closed");
    }
  }

  Result out;
  out.json = header(r);
  out.json["group"] = s.group.to_string();
  out.json["ring"] = s.ring.to_string();
  out.json["family"] = s.pres.family;
  out.json["degree_bound"] = num(r.degree);
  out.json["columns"] = columns;
  Json matrix = Json::array();
  std::ostringstream t;
  t << "routes on " << s.ring.to_string() << "[" << s.group.to_string() << "], " << monomials.size()
    << " monomials up to degree " << top << "\n";
  t << "  " << std::string(10, ' ');
  for (const auto& c : columns) t << "  " << c << std::string(c.size() < 16 ? 16 - c.size() : 0, ' ');
  t << "\n";
  for (const char* op : {"cup", "delta", "bracket"}) {
    Json row;
    row["operation"] = op;
    Json cells = Json::array();
    t << "  " << op << std::string(10 - std::string_view(op).size(), ' ');
    for (const auto& tally : rows[op]) {
      std::string cell = tally.total == 0 ? "n/a" : std::to_string(tally.agree) + "/" + std::to_string(tally.total);
      if (tally.agree != tally.total) out.passed = false;
      cells.push_back(cell);
      t << "  " << cell << std::string(cell.size() < 16 ? 16 - cell.size() : 0, ' ');
    }
    t << "\n";
    row["cells"] = cells;
    matrix.push_back(row);
  }
  if (!s.bar) t << "  (bar routes need a finite cyclic group)\n";
  for (const auto& sm : samples) t << "  disagreement: " << sm << "\n";
  out.json["matrix"] = matrix;
  out.json["disagreements"] = strings(samples);
  out.json["agreement"] = out.passed;
  t << "agreement: " << (out.passed ? "true" : "false") << "\n";
  out.text = t.str();
  return out;
}

Result dispatch(const Request& r) {
  if (r.command == "present") return present(r);
  if (r.command == "delta") return delta(r);
  if (r.command == "bracket") return bracket(r);
  if (r.command == "homology") return homology(r);
  if (r.command == "verify") return verify(r);
  return compare(r);
}

void emit(const Request& r, const Result& res, std::ostream& out) {
  if (r.format == "json")
    out << res.json.dump(2) << "\n";
  else
    out << res.text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Request r;
  CLI::App app{"Hochschild cohomology and BV structure of abelian group rings"};
  app.name("hhbv");
  app.require_subcommand(1);

  int degree = 0;
  try {
    degree = default_degree();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  r.degree = degree;
  r.jobs = std::max(1u, std::thread::hardware_concurrency());

  const auto common = [&](CLI::App* sub, bool needs_group) {
    auto* g = sub->add_option("-g,--group", r.group, "abelian group, e.g. \"Z/4 x Z/2\" or \"Z^2\"");
    if (needs_group) g->required();
    sub->add_option("-r,--ring", r.ring, "coefficients: Z, Q, Z/m, F_p")->capture_default_str();
    sub->add_option("-d,--degree", r.degree, "degree bound")->check(CLI::Range(kMinDegree, kMaxDegree))->capture_default_str();
    sub->add_option("--format", r.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  };

  auto* present_cmd = app.add_subcommand("present", "generators, relations, BV operator and bracket tables");
  common(present_cmd, true);
  auto* delta_cmd = app.add_subcommand("delta", "BV operator on a class, cross-checked on the small resolution");
  common(delta_cmd, true);
  delta_cmd->add_option("-m,--monomial", r.monomials, "class in the presentation's generators")->required();
  auto* bracket_cmd = app.add_subcommand("bracket", "Gerstenhaber bracket of two classes, all available routes");
  common(bracket_cmd, true);
  bracket_cmd->add_option("-m,--monomial", r.monomials, "two classes: -m a -m b")->required();
  auto* homology_cmd = app.add_subcommand("homology", "HH^i as an abelian group per degree");
  common(homology_cmd, true);
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  common(verify_cmd, false);
  verify_cmd->add_option("--suite", r.suites, "suite name (repeatable); all when omitted");
  verify_cmd->add_option("--jobs", r.jobs, "worker threads")->check(CLI::PositiveNumber);
  auto* compare_cmd = app.add_subcommand("compare", "cross-route agreement matrix: bar vs small resolution vs closed form");
  common(compare_cmd, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (auto* sub : app.get_subcommands()) r.command = sub->get_name();
  // verify filters by ring only when one was given
  if (r.command == "verify" && verify_cmd->count("--ring") == 0) r.ring.clear();
  if (r.degree < kMinDegree || r.degree > kMaxDegree) {
    err << "error: degree bound " << r.degree << " outside [" << kMinDegree << ", " << kMaxDegree << "]\n";
    return 2;
  }

  try {
    const Result res = dispatch(r);
    emit(r, res, out);
    return res.passed ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace hhbv::cli
