// nilcx command-line tool: validate algebras, compute series/filtrations,
// classify complex-structure existence, and inspect spinor data.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <nilcx/nilcx.hpp>

using nlohmann::ordered_json;
using namespace nilcx;

namespace {

struct UsageErr {
  std::string msg;
};

struct Options {
  std::string format = "text";
  std::string input;       // algebra file path
  std::string catalog;     // catalog name
  int n = 0, r = 0;
  std::string delta, a, b;
  std::vector<std::string> thetas;
  std::string B, omega;
  int max_dim = 10;
  bool list = false;
  std::vector<std::string> gvecs;  // courant operands
};

Rat parse_rat_arg(const std::string& s, const std::string& flag) {
  io_detail::Cursor c{s};
  try {
    return io_detail::parse_rational(s, c);
  } catch (const ParseError&) {
    throw UsageErr{"flag " + flag + ": malformed rational '" + s + "'"};
  }
}

struct CatalogEntry {
  std::string params;  // human-readable parameter ranges
  std::string about;
};

const std::map<std::string, CatalogEntry>& catalog_table() {
  static const std::map<std::string, CatalogEntry> t = {
      {"lr", {"--n N (N >= 2)", "L_{2N-1} + R, dimension 2N, class t1"}},
      {"l", {"--n N --r R (N >= 3, R odd, 3 <= R <= 2N-3)",
             "L_{2N,R}, dimension 2N, class tR"}},
      {"t", {"--n N (N >= 3)", "T_{2N,2N-3}, dimension 2N, class t_{2N-3}"}},
      {"n6_3", {"(none)", "N_{6,3}, dimension 6, class t3"}},
      {"n6_3_salamon", {"(none)", "N_{6,3} in the Salamon presentation"}},
      {"dim6", {"--delta D (rational)", "dimension-6 family, class t3"}},
      {"t3", {"--a A --b B (rationals)", "dimension-6 t3 family with parameters"}},
      {"filiform", {"--n N (N >= 3)", "model filiform algebra of dimension N"}},
      {"abelian", {"--n N (N >= 1)", "abelian algebra of dimension N"}},
  };
  return t;
}

LieAlgebra make_catalog(const Options& o) {
  const std::string& c = o.catalog;
  if (!catalog_table().count(c)) throw UsageErr{"unknown catalog name '" + c + "'"};
  auto need_n = [&](int lo) {
    if (o.n < lo) throw UsageErr{"catalog " + c + " requires --n >= " + std::to_string(lo)};
    return o.n;
  };
  if (c == "lr") return catalog_LR(need_n(2));
  if (c == "l") {
    int n = need_n(3);
    if (o.r < 3 || o.r > 2 * n - 3 || o.r % 2 == 0)
      throw UsageErr{"catalog l requires odd --r with 3 <= r <= 2n-3"};
    return catalog_L(n, o.r);
  }
  if (c == "t") return catalog_T(need_n(4));
  if (c == "n6_3") return catalog_N63();
  if (c == "n6_3_salamon") return catalog_n63_salamon();
  if (c == "dim6") {
    if (o.delta.empty()) throw UsageErr{"catalog dim6 requires --delta"};
    return catalog_dim6(parse_rat_arg(o.delta, "--delta"));
  }
  if (c == "t3") {
    if (o.a.empty() || o.b.empty()) throw UsageErr{"catalog t3 requires --a and --b"};
    return catalog_t3(parse_rat_arg(o.a, "--a"), parse_rat_arg(o.b, "--b"));
  }
  if (c == "filiform") return catalog_filiform(need_n(3));
  return catalog_abelian(need_n(1));
}

LieAlgebra load_algebra(const Options& o) {
  LieAlgebra g = [&] {
    if (!o.catalog.empty()) return make_catalog(o);
    if (o.input.empty()) throw UsageErr{"expected an algebra file or --catalog NAME"};
    std::ifstream in(o.input);
    if (!in) throw error("cannot open '" + o.input + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra(buf.str());
  }();
  g.validate();
  return g;
}

void emit(const Options& o, const ordered_json& j, const std::string& text) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

ordered_json envelope(const std::string& verb) {
  ordered_json j;
  j["schema"] = 1;
  j["verb"] = verb;
  return j;
}

ordered_json report_json(const StructureReport& rep) {
  ordered_json j;
  j["nilindex"] = rep.nilindex;
  j["lcs_dims"] = rep.lcs_dims;
  j["form"] = rep.form;
  j["class"] = alg_class_str(rep.cls, rep.r);
  return j;
}

int cmd_validate(const Options& o) {
  LieAlgebra g = load_algebra(o);
  StructureReport rep = g.structure();
  ordered_json j = envelope("validate");
  j["valid"] = true;
  j["dim"] = g.dim();
  j["structure"] = report_json(rep);
  std::ostringstream t;
  t << "valid\n"
    << "dim " << g.dim() << "\n"
    << "nilindex " << rep.nilindex << "\n"
    << "class " << alg_class_str(rep.cls, rep.r) << "\n";
  t << "form";
  for (int p : rep.form) t << " " << p;
  t << "\n";
  emit(o, j, t.str());
  return 0;
}

int cmd_series(const Options& o) {
  LieAlgebra g = load_algebra(o);
  auto series = g.lower_central_series();
  ordered_json j = envelope("series");
  std::ostringstream t;
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < series.size(); ++i) {
    arr.push_back(series[i].dim());
    t << "g^" << i << " dim " << series[i].dim() << "\n";
  }
  j["lcs_dims"] = arr;
  emit(o, j, t.str());
  return 0;
}

int cmd_grade(const Options& o) {
  LieAlgebra g = load_algebra(o);
  LieAlgebra gr = graded(g);
  std::string text = print_algebra(gr);
  ordered_json j = envelope("grade");
  j["algebra"] = text;
  emit(o, j, text);
  return 0;
}

int cmd_filtration(const Options& o) {
  LieAlgebra g = load_algebra(o);
  Filtration f = annihilator_filtration(g);
  ordered_json j = envelope("filtration");
  std::ostringstream t;
  ordered_json dims = ordered_json::array();
  for (std::size_t i = 0; i < f.spaces.size(); ++i) {
    dims.push_back(f.spaces[i].dim());
    t << "V_" << i << " dim " << f.spaces[i].dim() << "\n";
  }
  j["dims"] = dims;
  j["quotient_dims"] = f.quotient_dims;
  t << "quotients";
  for (int q : f.quotient_dims) t << " " << q;
  t << "\n";
  if (f.j_index) {
    j["j_index"] = *f.j_index;
    t << "j_index " << *f.j_index << "\n";
  } else {
    j["j_index"] = nullptr;
    t << "j_index none\n";
  }
  emit(o, j, t.str());
  return 0;
}

int cmd_bound(const Options& o) {
  LieAlgebra g = load_algebra(o);
  BoundData b = type_bound(g);
  ordered_json j = envelope("bound");
  j["nil"] = b.nil;
  j["j"] = b.j;
  j["k_max"] = b.k_max;
  std::ostringstream t;
  t << "nil " << b.nil << "\nj " << b.j << "\nk_max " << b.k_max << "\n";
  emit(o, j, t.str());
  return 0;
}

ordered_json step_json(const Step& s) {
  ordered_json j;
  j["kind"] = s.kind;
  if (s.eq >= 0) j["eq"] = s.eq;
  if (!s.var.empty()) j["var"] = s.var;
  if (!s.poly.empty()) j["poly"] = s.poly;
  if (s.real_roots >= 0) j["real_roots"] = s.real_roots;
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

void render_steps(std::ostream& t, const Certificate& c) {
  for (const Step& s : c.steps) {
    t << "  step " << s.kind;
    if (s.eq >= 0) t << " eq=" << s.eq;
    if (!s.var.empty()) t << " var=" << s.var;
    if (!s.poly.empty()) t << " poly=" << s.poly;
    if (s.real_roots >= 0) t << " real_roots=" << s.real_roots;
    if (!s.note.empty()) t << " (" << s.note << ")";
    t << "\n";
  }
  if (!c.univariate.empty())
    t << "  univariate " << c.univariate << ", real roots " << c.real_roots << "\n";
}

ordered_json witness_json(const WitnessData& w) {
  ordered_json arr = ordered_json::array();
  for (const PForm& th : w.thetas) arr.push_back(pform_str(th));
  return arr;
}

int cmd_classify(const Options& o) {
  LieAlgebra g = load_algebra(o);
  if (g.dim() > o.max_dim)
    throw UsageErr{"dimension " + std::to_string(g.dim()) + " exceeds --max-dim " +
                   std::to_string(o.max_dim)};
  Verdict v = classify(g);
  ordered_json j = envelope("classify");
  j["verdict"] = outcome_str(v.outcome);
  ordered_json jb;
  jb["nil"] = v.bound.nil;
  jb["j"] = v.bound.j;
  jb["k_max"] = v.bound.k_max;
  j["bound"] = jb;
  ordered_json profs = ordered_json::array();
  std::ostringstream t;
  t << "verdict " << outcome_str(v.outcome) << "\n";
  t << "bound nil=" << v.bound.nil << " j=" << v.bound.j << " k_max=" << v.bound.k_max
    << "\n";
  for (const ProfileOutcome& p : v.profiles) {
    ordered_json jp;
    jp["profile"] = p.profile.str();
    jp["outcome"] = outcome_str(p.outcome);
    ordered_json steps = ordered_json::array();
    for (const Step& s : p.cert.steps) steps.push_back(step_json(s));
    jp["steps"] = steps;
    if (!p.cert.univariate.empty()) {
      jp["univariate"] = p.cert.univariate;
      jp["real_roots"] = p.cert.real_roots;
    }
    if (!p.residual.empty()) jp["residual"] = p.residual;
    profs.push_back(jp);
    t << "profile " << p.profile.str() << ": " << outcome_str(p.outcome) << "\n";
    render_steps(t, p.cert);
    for (const std::string& r : p.residual) t << "  residual " << r << "\n";
  }
  j["profiles"] = profs;
  if (v.witness) {
    j["witness"] = witness_json(*v.witness);
    t << "witness:\n";
    for (const PForm& th : v.witness->thetas) t << "  " << pform_str(th) << "\n";
  }
  emit(o, j, t.str());
  switch (v.outcome) {
    case Outcome::Admits: return 0;
    case Outcome::Obstructed: return 1;
    default: return 2;
  }
}

std::vector<PForm> parse_thetas(const Options& o, int dim) {
  if (o.thetas.empty()) throw UsageErr{"expected at least one --theta"};
  std::vector<PForm> out;
  for (const std::string& s : o.thetas) out.push_back(parse_form_expr(s, dim));
  return out;
}

int cmd_witness(const Options& o) {
  LieAlgebra g = load_algebra(o);
  std::vector<PForm> thetas = parse_thetas(o, g.dim());
  WitnessReport rep = verify_witness(g, thetas);
  ordered_json j = envelope("witness");
  j["ok"] = rep.ok;
  ordered_json stages = ordered_json::array();
  std::ostringstream t;
  for (const auto& [name, ok] : rep.stages) {
    ordered_json js;
    js["stage"] = name;
    js["pass"] = ok;
    stages.push_back(js);
    t << "stage " << name << " " << (ok ? "pass" : "fail") << "\n";
  }
  j["stages"] = stages;
  if (!rep.ok) j["failed_stage"] = rep.failed_stage;
  t << (rep.ok ? "witness verified\n" : "witness rejected at stage " + rep.failed_stage + "\n");
  emit(o, j, t.str());
  return rep.ok ? 0 : 1;
}

int cmd_catalog(const Options& o) {
  if (o.list || o.catalog.empty()) {
    ordered_json j = envelope("catalog");
    ordered_json arr = ordered_json::array();
    std::ostringstream t;
    for (const auto& [name, e] : catalog_table()) {
      ordered_json je;
      je["name"] = name;
      je["params"] = e.params;
      je["about"] = e.about;
      arr.push_back(je);
      t << name << "  " << e.params << "  " << e.about << "\n";
    }
    j["entries"] = arr;
    emit(o, j, t.str());
    return 0;
  }
  LieAlgebra g = load_algebra(o);
  std::string text = print_algebra(g);
  ordered_json j = envelope("catalog");
  j["algebra"] = text;
  emit(o, j, text);
  return 0;
}

int cmd_courant(const Options& o) {
  LieAlgebra g = load_algebra(o);
  if (o.gvecs.size() != 2) throw UsageErr{"courant expects two generalized vector expressions"};
  GVecC u = parse_gvec_expr(o.gvecs[0], g.dim());
  GVecC v = parse_gvec_expr(o.gvecs[1], g.dim());
  GVecC br = courant(g, u, v);
  Gauss p = pairing(u, v);
  ordered_json j = envelope("courant");
  j["bracket"] = gvec_str(br, g.labels());
  j["pairing"] = gauss_str(p);
  std::ostringstream t;
  t << "bracket " << gvec_str(br, g.labels()) << "\n";
  t << "pairing " << gauss_str(p) << "\n";
  emit(o, j, t.str());
  return 0;
}

int cmd_spinor(const Options& o) {
  LieAlgebra g = load_algebra(o);
  int dim = g.dim();
  std::vector<PForm> thetas;
  for (const std::string& s : o.thetas) thetas.push_back(parse_form_expr(s, dim));
  PForm B = o.B.empty() ? PForm::zero(dim, 2) : parse_form_expr(o.B, dim);
  PForm W = o.omega.empty() ? PForm::zero(dim, 2) : parse_form_expr(o.omega, dim);
  if (thetas.empty() && B.terms.empty() && W.terms.empty())
    throw UsageErr{"expected --theta, --B, or --omega"};
  Spinor rho = spinor_from_data(thetas, B, W);
  AnnihilatorResult ann = annihilator(g, rho);
  IntegrabilityResult integ = integrability(g, rho);
  ordered_json j = envelope("spinor");
  ordered_json comps = ordered_json::array();
  std::ostringstream t;
  for (int d = 0; d <= dim; ++d) {
    if (rho.comp[d].terms.empty()) continue;
    ordered_json jc;
    jc["degree"] = d;
    jc["form"] = pform_str(rho.comp[d]);
    comps.push_back(jc);
    t << "degree " << d << ": " << pform_str(rho.comp[d]) << "\n";
  }
  j["components"] = comps;
  j["pure"] = ann.pure;
  j["annihilator_dim"] = static_cast<int>(ann.basis.size());
  j["closed"] = integ.closed;
  j["integrable"] = integ.closed || integ.solution.has_value();
  t << "annihilator dim " << ann.basis.size() << "\n";
  t << "pure " << (ann.pure ? "true" : "false") << "\n";
  t << "closed " << (integ.closed ? "true" : "false") << "\n";
  t << "integrable " << ((integ.closed || integ.solution) ? "true" : "false") << "\n";
  emit(o, j, t.str());
  return ann.pure ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for complex structures on nilpotent Lie algebras"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool takes_input) {
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--catalog", o.catalog, "catalog algebra name");
    sub->add_option("--n", o.n, "catalog parameter n");
    sub->add_option("--r", o.r, "catalog parameter r");
    sub->add_option("--delta", o.delta, "catalog parameter delta (rational)");
    sub->add_option("--a", o.a, "catalog parameter a (rational)");
    sub->add_option("--b", o.b, "catalog parameter b (rational)");
    if (takes_input) sub->add_option("input", o.input, "algebra file");
  };

  auto* v_validate = app.add_subcommand("validate", "check Jacobi and report the structure");
  add_common(v_validate, true);
  auto* v_series = app.add_subcommand("series", "lower central series dimensions");
  add_common(v_series, true);
  auto* v_grade = app.add_subcommand("grade", "associated graded algebra");
  add_common(v_grade, true);
  auto* v_filt = app.add_subcommand("filtration", "annihilator filtration");
  add_common(v_filt, true);
  auto* v_bound = app.add_subcommand("bound", "type bound k_max");
  add_common(v_bound, true);
  auto* v_classify = app.add_subcommand("classify", "decide complex-structure existence");
  add_common(v_classify, true);
  v_classify->add_option("--max-dim", o.max_dim, "refuse larger algebras");
  auto* v_witness = app.add_subcommand("witness", "verify a coframe witness");
  add_common(v_witness, true);
  v_witness->add_option("--theta", o.thetas, "coframe 1-form (repeatable)");
  auto* v_catalog = app.add_subcommand("catalog", "print a catalog algebra");
  add_common(v_catalog, false);
  v_catalog->add_flag("--list", o.list, "list catalog names and parameter ranges");
  auto* v_courant = app.add_subcommand("courant", "Courant bracket and pairing");
  add_common(v_courant, true);
  v_courant->add_option("vectors", o.gvecs, "two generalized vector expressions");
  auto* v_spinor = app.add_subcommand("spinor", "build and analyze a spinor");
  add_common(v_spinor, true);
  v_spinor->add_option("--theta", o.thetas, "decomposable factor (repeatable)");
  v_spinor->add_option("--B", o.B, "B-field 2-form");
  v_spinor->add_option("--omega", o.omega, "symplectic 2-form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  }

  try {
    if (*v_validate) return cmd_validate(o);
    if (*v_series) return cmd_series(o);
    if (*v_grade) return cmd_grade(o);
    if (*v_filt) return cmd_filtration(o);
    if (*v_bound) return cmd_bound(o);
    if (*v_classify) return cmd_classify(o);
    if (*v_witness) return cmd_witness(o);
    if (*v_catalog) return cmd_catalog(o);
    if (*v_courant) return cmd_courant(o);
    if (*v_spinor) return cmd_spinor(o);
    return 64;
  } catch (const UsageErr& e) {
    std::cerr << "usage error: " << e.msg << "\n";
    return 64;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 65;
  } catch (const JacobiFailure& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 65;
  } catch (const error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 65;
  }
}
