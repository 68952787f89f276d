#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "coxcalc/error.hpp"
#include "coxcalc/sheaf_ops.hpp"

namespace coxcalc::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.3.0";

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::UsageError, msg); }

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    usage("bad integer '" + s + "' in " + what);
  }
  if (used != s.size()) usage("bad integer '" + s + "' in " + what);
  return v;
}

json degree_json(const DegreeVector& d) {
  json a = json::array();
  for (auto v : d.free) a.push_back(std::to_string(v));
  for (auto v : d.torsion) a.push_back(std::to_string(v));
  return a;
}

json rational_json(const Rational& q) { return q.get_str(); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string group_text(const ClassGroup& g) {
  std::vector<std::string> parts;
  if (g.free_rank() > 0) parts.push_back(g.free_rank() == 1 ? "Z" : "Z^" + std::to_string(g.free_rank()));
  for (auto t : g.torsion()) parts.push_back("Z/" + std::to_string(t));
  return parts.empty() ? "0" : join(parts, " + ");
}

json group_json(const ClassGroup& g) {
  json tors = json::array();
  for (auto t : g.torsion()) tors.push_back(std::to_string(t));
  return json{{"free_rank", std::to_string(g.free_rank())}, {"torsion", tors}};
}

const DegreeWindow& require_window(const CommandOptions& o) {
  if (!o.window) usage(o.command + " needs --window");
  return *o.window;
}

const std::string& require_via(const CommandOptions& o) {
  if (o.via.empty()) usage(o.command + " needs --via");
  return o.via;
}

json poly_matrix_json(const PolyMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

json module_json(const GradedModule& m) {
  json gens = json::array(), rels = json::array();
  for (const auto& s : m.gen_shifts) gens.push_back(degree_json(s));
  for (const auto& s : m.rel_shifts) rels.push_back(degree_json(s));
  return json{{"gen_shifts", gens}, {"rel_shifts", rels}, {"relations", poly_matrix_json(m.relations)}};
}

std::vector<std::string> module_lines(const GradedModule& m) {
  std::vector<std::string> out;
  std::vector<std::string> gens, rels;
  for (const auto& s : m.gen_shifts) gens.push_back(to_string(s));
  for (const auto& s : m.rel_shifts) rels.push_back(to_string(s));
  out.push_back("generator shifts: " + join(gens, " "));
  out.push_back("relation shifts: " + (rels.empty() ? std::string("(none)") : join(rels, " ")));
  for (std::size_t j = 0; j < m.num_relations(); ++j) {
    std::vector<std::string> col;
    for (std::size_t i = 0; i < m.num_generators(); ++i) col.push_back(m.relations(i, j).to_string());
    out.push_back("relation " + std::to_string(j + 1) + ": [" + join(col, ", ") + "]");
  }
  return out;
}

Report classgroup(const Workspace& ws, const CommandOptions& o) {
  const GradedRing ring = workspace_ring(ws, o.target);
  Report r;
  r.lines.push_back("Cl(" + o.target + ") = " + group_text(ring.class_group));
  json degs = json::array();
  for (std::size_t i = 0; i < ring.num_vars; ++i) {
    r.lines.push_back("deg x" + std::to_string(i + 1) + " = " + to_string(ring.var_degrees[i]));
    degs.push_back(degree_json(ring.var_degrees[i]));
  }
  r.result = group_json(ring.class_group);
  r.result["variable_degrees"] = degs;
  return r;
}

Report coxring(const Workspace& ws, const CommandOptions& o) {
  const GradedRing ring = workspace_ring(ws, o.target);
  Report r;
  std::vector<std::string> vars, irr;
  json jvars = json::array(), jirr = json::array();
  for (std::size_t i = 0; i < ring.num_vars; ++i) {
    const std::string v = "x" + std::to_string(i + 1);
    vars.push_back(v + ":" + to_string(ring.var_degrees[i]));
    jvars.push_back(json{{"name", v}, {"degree", degree_json(ring.var_degrees[i])}});
  }
  for (const auto& g : ring.irrelevant_gens) {
    irr.push_back(monomial_to_string(g, 'x'));
    jirr.push_back(irr.back());
  }
  r.lines.push_back("Cox(" + o.target + ") = k[" + join(vars, ", ") + "]");
  r.lines.push_back("graded by " + group_text(ring.class_group));
  r.lines.push_back("irrelevant ideal: (" + join(irr, ", ") + ")");
  r.result = json{{"class_group", group_json(ring.class_group)}, {"variables", jvars}, {"irrelevant_ideal", jirr}};
  if (ring.positivity) {
    std::vector<std::string> lam;
    json jl = json::array();
    for (const auto& q : *ring.positivity) {
      lam.push_back(q.get_str());
      jl.push_back(rational_json(q));
    }
    r.lines.push_back("positivity functional: (" + join(lam, ",") + ")");
    r.result["positivity"] = jl;
  } else {
    r.lines.push_back("positivity functional: none");
    r.result["positivity"] = nullptr;
  }
  return r;
}

Report lift(const Workspace& ws, const CommandOptions& o) {
  const MorphismLift l = workspace_lift(ws, o.target);
  verify_lift(l);
  const MorphismDecl& decl = *ws.find_morphism(o.target);
  Report r;
  r.lines.push_back("lift of " + o.target + " : " + decl.source + " -> " + decl.target);
  json images = json::object();
  for (std::size_t j = 0; j < l.var_images.size(); ++j) {
    const std::string y = "y" + std::to_string(j + 1);
    const std::string img = monomial_to_string(l.var_images[j], 'x');
    r.lines.push_back("  " + y + " -> " + img);
    images[y] = img;
  }
  json phi = json::array();
  for (std::size_t j = 0; j < l.dst_ring.num_vars; ++j) {
    const DegreeVector from = l.dst_ring.var_degrees[j];
    phi.push_back(json{{"from", degree_json(from)}, {"to", degree_json(l.phi.apply(from))}});
  }
  std::vector<std::string> gen_imgs;
  json jgen = json::array();
  for (const auto& g : l.phi.generator_images) {
    gen_imgs.push_back(to_string(g));
    jgen.push_back(degree_json(g));
  }
  r.lines.push_back("phi on generators of Cl(" + decl.target + "): " + join(gen_imgs, " "));
  r.lines.push_back("charts verified");
  r.result = json{{"source", decl.source},
                  {"target", decl.target},
                  {"images", images},
                  {"phi_generator_images", jgen},
                  {"phi_on_variable_degrees", phi},
                  {"verified", true}};
  return r;
}

Report hilbert(const Workspace& ws, const CommandOptions& o) {
  const GradedModule m = workspace_module(ws, o.target);
  const auto table = hilbert_table(m, require_window(o), o.threads);
  Report r;
  json rows = json::array();
  for (const auto& [d, n] : table) {
    r.lines.push_back(to_string(d) + "  " + std::to_string(n));
    rows.push_back(json{{"degree", degree_json(d)}, {"dim", std::to_string(n)}});
  }
  r.result = json{{"window", to_string(*o.window)}, {"table", rows}};
  return r;
}

Report pullback(const Workspace& ws, const CommandOptions& o) {
  const GradedModule n = workspace_module(ws, o.target);
  const MorphismLift l = workspace_lift(ws, require_via(o));
  const GradedModule m = pullback_module(n, l);
  Report r;
  r.lines.push_back("pullback of " + o.target + " along " + o.via + " over Cox(" + ws.find_morphism(o.via)->source +
                    ")");
  for (auto& line : module_lines(m)) r.lines.push_back(std::move(line));
  r.result = module_json(m);
  return r;
}

PushforwardSlice make_slice(const Workspace& ws, const CommandOptions& o) {
  const GradedModule m = workspace_module(ws, o.target);
  const MorphismLift l = workspace_lift(ws, require_via(o));
  return pushforward_slice(m, l, require_window(o), o.theorem_grade);
}

Report pushforward(const Workspace& ws, const CommandOptions& o) {
  PushforwardSlice slice = make_slice(ws, o);
  Report r;
  json rows = json::array();
  for (const auto& [e, n] : slice.dimensions()) {
    r.lines.push_back(to_string(e) + "  " + std::to_string(n));
    rows.push_back(json{{"degree", degree_json(e)}, {"dim", std::to_string(n)}});
  }
  r.lines.push_back(slice.theorem_grade() ? "module of sections: yes" : "module of sections: not certified");
  r.result = json{{"window", to_string(*o.window)}, {"dims", rows}, {"theorem_grade", slice.theorem_grade()}};
  return r;
}

std::string shift_list(const std::vector<std::int64_t>& shifts) {
  std::vector<std::string> parts;
  for (auto k : shifts) parts.push_back("S(" + std::to_string(k) + ")");
  return parts.empty() ? "0" : join(parts, " + ");
}

Report identify_sum(const Workspace& ws, const CommandOptions& o) {
  PushforwardSlice slice = make_slice(ws, o);
  Report r;
  if (o.expect) {
    const auto mismatches = compare_with_line_bundle_sum(slice, *o.expect);
    json jm = json::array();
    for (const auto& mm : mismatches) {
      r.lines.push_back("degree " + to_string(mm.degree) + ": expected " + std::to_string(mm.expected) +
                        ", slice has " + std::to_string(mm.actual));
      jm.push_back(json{{"degree", degree_json(mm.degree)},
                        {"expected", std::to_string(mm.expected)},
                        {"actual", std::to_string(mm.actual)}});
    }
    r.lines.insert(r.lines.begin(), std::string(mismatches.empty() ? "consistent" : "inconsistent") + " with " +
                                        shift_list(*o.expect) + " on " + to_string(*o.window));
    json je = json::array();
    for (auto k : *o.expect) je.push_back(std::to_string(k));
    r.result = json{{"expected", je}, {"consistent", mismatches.empty()}, {"mismatches", jm}};
    return r;
  }
  const LineBundleSum sum = identify_line_bundle_sum(slice, o.margin);
  const bool exact = sum.status == SplittingStatus::Exact;
  r.lines.push_back(shift_list(sum.shifts));
  r.lines.push_back(std::string("status: ") + (exact ? "exact" : "consistent on window") + " (" +
                    to_string(sum.verified_window) + ")");
  json js = json::array(), jg = json::array();
  for (auto k : sum.shifts) js.push_back(std::to_string(k));
  std::vector<std::string> gens;
  for (const auto& [d, n] : sum.generators) {
    gens.push_back(std::to_string(n) + " in " + to_string(d));
    jg.push_back(json{{"degree", degree_json(d)}, {"count", std::to_string(n)}});
  }
  r.lines.push_back("minimal generators: " + join(gens, ", "));
  r.result = json{{"shifts", js},
                  {"status", exact ? "Exact" : "ConsistentOnWindow"},
                  {"window", to_string(sum.verified_window)},
                  {"generators", jg},
                  {"theorem_grade", slice.theorem_grade()}};
  return r;
}

Report sheaf_zero(const Workspace& ws, const CommandOptions& o) {
  const GradedModule m = workspace_module(ws, o.target);
  const SheafZeroReport z = sheaf_is_zero(m, require_window(o), o.cap);
  const bool zero = z.status == SheafZeroStatus::Zero;
  Report r;
  r.lines.push_back(zero ? "sheaf is zero" : "sheaf is not shown to be zero");
  json nil = json::array();
  for (std::size_t i = 0; i < z.nilpotency.size(); ++i) {
    const std::string g = monomial_to_string(m.ring.irrelevant_gens[i], 'x');
    if (z.nilpotency[i]) {
      r.lines.push_back("  (" + g + ")^" + std::to_string(*z.nilpotency[i]) + " kills the module");
      nil.push_back(json{{"generator", g}, {"power", std::to_string(*z.nilpotency[i])}});
    } else {
      r.lines.push_back("  no power of " + g + " up to " + std::to_string(o.cap) + " kills the module");
      nil.push_back(json{{"generator", g}, {"power", nullptr}});
    }
  }
  r.result = json{{"zero", zero}, {"cap", std::to_string(o.cap)}, {"nilpotency", nil}};
  if (z.witness_degree) r.result["witness_degree"] = degree_json(*z.witness_degree);
  return r;
}

Report euler(const Workspace& ws, const CommandOptions& o) {
  if (o.tangent == o.cotangent) usage("euler needs exactly one of --tangent, --cotangent");
  const GradedRing ring = workspace_ring(ws, o.target);
  const GradedMap f = o.tangent ? euler_tangent_map(ring) : euler_cotangent_map(ring);
  Report r;
  r.lines.push_back(std::string(o.tangent ? "alpha" : "theta") + " over Cox(" + o.target + ")");
  std::vector<std::string> src, dst;
  for (const auto& s : f.source.gen_shifts) src.push_back(to_string(s));
  for (const auto& s : f.target.gen_shifts) dst.push_back(to_string(s));
  r.lines.push_back("source shifts: " + join(src, " "));
  r.lines.push_back("target shifts: " + join(dst, " "));
  for (std::size_t i = 0; i < f.matrix.rows(); ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < f.matrix.cols(); ++j) row.push_back(f.matrix(i, j).to_string());
    r.lines.push_back("  [" + join(row, ", ") + "]");
  }
  r.result = json{{"map", o.tangent ? "tangent" : "cotangent"},
                  {"source", module_json(f.source)["gen_shifts"]},
                  {"target", module_json(f.target)["gen_shifts"]},
                  {"matrix", poly_matrix_json(f.matrix)}};
  return r;
}

std::string echo(const CommandOptions& o) {
  std::string s = o.command + " " + o.target;
  if (!o.via.empty()) s += " --via " + o.via;
  if (o.window) s += " --window " + to_string(*o.window);
  if (o.command == "sheaf-zero") s += " --cap " + std::to_string(o.cap);
  if (o.command == "identify-sum" && !o.expect && o.margin != 2) s += " --margin " + std::to_string(o.margin);
  if (o.expect) {
    std::vector<std::string> k;
    for (auto v : *o.expect) k.push_back(std::to_string(v));
    s += " --expect " + join(k, ",");
  }
  if (o.theorem_grade) s += " --theorem-grade";
  if (o.tangent) s += " --tangent";
  if (o.cotangent) s += " --cotangent";
  return s;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::UnresolvedReference:
    case ErrorCode::DuplicateName:
    case ErrorCode::UsageError:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

DegreeWindow parse_window(const std::string& text) {
  DegreeWindow w;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) usage("window range '" + part + "' is not of the form a..b");
    const std::int64_t a = parse_int(part.substr(0, dots), "window");
    const std::int64_t b = parse_int(part.substr(dots + 2), "window");
    if (a > b) usage("window range '" + part + "' is empty");
    w.ranges.emplace_back(a, b);
  }
  if (w.ranges.empty()) usage("empty window");
  return w;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_int(part, "list"));
  if (out.empty()) usage("empty list");
  return out;
}

Report run_command(const Workspace& ws, const CommandOptions& o) {
  Report r;
  if (o.command == "classgroup") {
    r = classgroup(ws, o);
  } else if (o.command == "coxring") {
    r = coxring(ws, o);
  } else if (o.command == "lift") {
    r = lift(ws, o);
  } else if (o.command == "hilbert") {
    r = hilbert(ws, o);
  } else if (o.command == "pullback") {
    r = pullback(ws, o);
  } else if (o.command == "pushforward") {
    r = pushforward(ws, o);
  } else if (o.command == "identify-sum") {
    r = identify_sum(ws, o);
  } else if (o.command == "sheaf-zero") {
    r = sheaf_zero(ws, o);
  } else if (o.command == "euler") {
    r = euler(ws, o);
  } else {
    usage("unknown command '" + o.command + "'");
  }
  r.command = echo(o);
  return r;
}

std::string render_text(const Report& r) {
  std::string out;
  for (const auto& line : r.lines) out += line + "\n";
  return out;
}

std::string render_json(const Report& r) {
  json j{{"schema", 1}, {"version", kVersion}, {"command", r.command}, {"result", r.result}};
  return j.dump(2) + "\n";
}

std::string render_error_json(const std::string& command, const Error& e) {
  json j{{"schema", 1},
         {"version", kVersion},
         {"command", command},
         {"error", json{{"code", std::string(e.code_name())}, {"message", e.what()}}}};
  return j.dump(2) + "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cox ring calculator for smooth toric varieties", "coxcalc"};
  app.set_version_flag("--version", kVersion);
  std::vector<std::string> files;
  bool as_json = false;
  app.add_option("-f,--file", files, "input file (repeatable)")->required()->check(CLI::ExistingFile);
  app.add_flag("--json", as_json, "print a JSON report");
  app.require_subcommand(1);

  CommandOptions o;
  std::string window_text, expect_text;
  auto add_target = [&](CLI::App* sub, const char* what) { sub->add_option("target", o.target, what)->required(); };
  auto add_window = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--window", window_text, "degree window a..b[,c..d]");
    if (required) opt->required();
  };
  auto add_via = [&](CLI::App* sub) { sub->add_option("--via", o.via, "morphism to lift")->required(); };

  add_target(app.add_subcommand("classgroup", "class group and variable degrees"), "fan");
  add_target(app.add_subcommand("coxring", "Cox ring, irrelevant ideal, positivity"), "fan");
  add_target(app.add_subcommand("lift", "lift a toric morphism to Cox rings"), "morphism");
  auto* hil = app.add_subcommand("hilbert", "Hilbert table on a window");
  add_target(hil, "module");
  add_window(hil, true);
  auto* pb = app.add_subcommand("pullback", "pull a module back along a morphism");
  add_target(pb, "module");
  add_via(pb);
  auto* pf = app.add_subcommand("pushforward", "graded pieces of the pushforward slice");
  add_target(pf, "module");
  add_via(pf);
  add_window(pf, true);
  pf->add_flag("--theorem-grade", o.theorem_grade, "vouch that the module is the full module of sections");
  auto* id = app.add_subcommand("identify-sum", "split a slice over a projective space into line bundles");
  add_target(id, "module");
  add_via(id);
  add_window(id, true);
  id->add_option("--margin", o.margin, "degrees kept free of new generators at the top of the window");
  id->add_option("--expect", expect_text, "compare against S(k1)+S(k2)+... instead");
  id->add_flag("--theorem-grade", o.theorem_grade, "vouch that the module is the full module of sections");
  auto* sz = app.add_subcommand("sheaf-zero", "does the module define the zero sheaf");
  add_target(sz, "module");
  add_window(sz, true);
  sz->add_option("--cap", o.cap, "largest power of each irrelevant generator to try");
  auto* eu = app.add_subcommand("euler", "Euler sequence map");
  add_target(eu, "fan");
  eu->add_flag("--tangent", o.tangent, "the map alpha");
  eu->add_flag("--cotangent", o.cotangent, "the map theta");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  // Let negative window bounds such as "-4..4" pass as option values.
  std::vector<std::string> argv;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if ((args[i] == "--window" || args[i] == "--expect") && i + 1 < args.size()) {
      argv.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      argv.push_back(args[i]);
    }
  }
  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "coxcalc: " << e.what() << "\n";
    return 2;
  }
  o.command = app.get_subcommands().front()->get_name();

  if (const char* t = std::getenv("COXCALC_THREADS")) {
    const long n = std::strtol(t, nullptr, 10);
    if (n > 0) o.threads = static_cast<unsigned>(n);
  }

  try {
    if (!window_text.empty()) o.window = parse_window(window_text);
    if (!expect_text.empty()) o.expect = parse_int_list(expect_text);
    Workspace ws;
    for (const auto& path : files) {
      std::ifstream in(path);
      std::stringstream buf;
      buf << in.rdbuf();
      ws.merge(parse_input(buf.str(), path));
    }
    resolve(ws);
    const Report r = run_command(ws, o);
    out << (as_json ? render_json(r) : render_text(r));
    return 0;
  } catch (const Error& e) {
    if (as_json) {
      out << render_error_json(echo(o), e);
    } else {
      err << "coxcalc: error [" << e.code_name() << "]: " << e.what() << "\n";
    }
    return exit_code_for(e.code());
  }
}

}  // namespace coxcalc::cli
