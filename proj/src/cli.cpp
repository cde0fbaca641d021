#include "qrep/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qrep/builders.hpp"
#include "qrep/cyclic.hpp"
#include "qrep/errors.hpp"
#include "qrep/hom.hpp"
#include "qrep/operator_models.hpp"
#include "qrep/reflection.hpp"
#include "qrep/text_format.hpp"
#include "qrep/verify.hpp"

namespace qrep {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  std::string format = "text";

  std::string file;
  std::string vertex, dir;
  bool verify_end_iso = false;
  std::string family, op;
  std::string pair, lambda, w;
  int n = 0;
  bool density = false, four_subspace = false, phi = false;
  std::string suite;
  int trials = 10;
};

// Shortest of %.15g / %.17g that reads back exactly.
std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// key=value lines; nested keys are joined with '.', multi-line strings are
// printed as an indented block after "key:".
void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix + it.key();
    const Json& v = it.value();
    if (v.is_object()) {
      render_text(v, key + ".", out);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      for (std::size_t i = 0; i < v.size(); ++i) render_text(v[i], key + "[" + std::to_string(i) + "].", out);
    } else if (v.is_string()) {
      const std::string& s = v.get_ref<const std::string&>();
      if (s.find('\n') == std::string::npos) {
        out << key << "=" << s << "\n";
      } else {
        out << key << ":\n";
        std::istringstream lines(s);
        for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
      }
    } else if (v.is_number_float()) {
      out << key << "=" << number(v.get<double>()) << "\n";
    } else if (v.is_array()) {
      out << key << "=[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << (i ? ", " : "");
        if (v[i].is_string())
          out << v[i].get<std::string>();
        else if (v[i].is_number_float())
          out << number(v[i].get<double>());
        else
          out << v[i].dump();
      }
      out << "]\n";
    } else {
      out << key << "=" << v.dump() << "\n";
    }
  }
}

Json dims_json(const Rep& r) {
  Json d = Json::object();
  for (std::size_t v = 0; v < r.quiver().vertex_count(); ++v) d[r.quiver().vertices()[v]] = r.dim(v);
  return d;
}

Json end_json(const Rep& r, const Options& o) {
  Json j;
  HomBasis end = end_basis(r);
  j["end_dim"] = end.dim;
  j["max_residual"] = end.max_residual;
  j["tol_used"] = end.tol_used;
  j["reduced"] = end.reduced;
  if (r.is_zero()) {
    j["zero"] = true;
    j["transitive"] = false;
    j["indecomposable"] = false;
    return j;
  }
  auto v = is_indecomposable(r, o.seed);
  j["transitive"] = end.dim == 1;
  j["indecomposable"] = v.kind == Decomposability::indecomposable;
  j["search"] = {{"trials_used", v.search.trials_used},
                 {"candidates_tried", v.search.candidates_tried},
                 {"ill_conditioned", v.search.ill_conditioned}};
  if (v.witness) {
    Decomposition d = decompose_with(r, *v.witness);
    double idem = 0;
    for (const Mat& m : v.witness->mats) idem = std::max(idem, (m * m - m).norm());
    j["witness"] = {{"idempotent_residual", idem},
                    {"end_residual", hom_residual(r, r, v.witness->mats)},
                    {"summand_dims", {dims_json(d.first), dims_json(d.second)}},
                    {"idempotent", format_hom(r.quiver(), v.witness->mats)}};
  }
  return j;
}

void merge(Json& into, const Json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

Json analyze(const Options& o) {
  Rep r = read_rep_file(o.file);
  Json j;
  j["quiver"] = r.quiver().name();
  j["dims"] = dims_json(r);
  merge(j, end_json(r, o));
  return j;
}

Json reflect_cmd(const Options& o) {
  Rep r = read_rep_file(o.file);
  const ReflectMode mode = o.dir == "plus" ? ReflectMode::sink : ReflectMode::source;
  ReflectionResult res = reflect(r, o.vertex, mode);
  Json j;
  j["vertex"] = o.vertex;
  j["functor"] = o.dir == "plus" ? "Phi+" : "Phi-";
  j["hypothesis"] = o.dir == "plus" ? "full at sink" : "co-full at source";
  j["hypothesis_holds"] = is_full_at(r, o.vertex, mode);
  j["dims_in"] = dims_json(r);
  j["dims_out"] = dims_json(res.rep);
  if (o.verify_end_iso) {
    EndIsoReport e = verify_end_isomorphism(r, o.vertex, mode);
    j["end_iso"] = {{"dim_in", e.dim_in},
                    {"dim_out", e.dim_out},
                    {"transported_rank", e.transported_rank},
                    {"membership_residual", e.membership_residual},
                    {"multiplicativity_residual", e.multiplicativity_residual},
                    {"unit_residual", e.unit_residual},
                    {"isomorphic", e.isomorphic}};
  }
  j["rep"] = format_rep(res.rep);
  return j;
}

Mat read_operator(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    // allow '#' comments and line breaks inside the literal
    std::string flat;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) flat += line.substr(0, line.find('#')) + " ";
    Mat m = parse_matrix(flat);
    if (m.rows() != m.cols() || m.rows() == 0) throw PreconditionError("the operator must be a nonempty square matrix");
    return m;
  }
  if (spec.rfind("jordan:", 0) != 0) throw ParseError("--op expects jordan:k[:lambda] or file:<path>");
  return make_fixture(spec);
}

Json build_cmd(const Options& o) {
  Mat s = read_operator(o.op);
  Json j;
  j["family"] = o.family;
  j["k"] = static_cast<int>(s.rows());
  Rep r;
  if (o.family == "antilde") {
    AnTildeRep a = build_an_tilde_noncyclic({true, false}, Mat::Identity(s.rows(), s.cols()), s);
    j["alpha"] = a.alpha;
    j["beta"] = a.beta;
    r = a.rep;
  } else {
    ExtendedFamily f = o.family == "d4tilde"   ? ExtendedFamily::DTilde
                       : o.family == "e6tilde" ? ExtendedFamily::E6Tilde
                       : o.family == "e7tilde" ? ExtendedFamily::E7Tilde
                                               : ExtendedFamily::E8Tilde;
    r = build_extended_dynkin(f, s, 4);
  }
  j["dims"] = dims_json(r);
  merge(j, end_json(r, o));
  j["rep"] = format_rep(r);
  return j;
}

Json cycle_cmd(const Options& o) {
  Rep r = read_rep_file(o.file);
  CnCriterion c = cn_transitive_criterion(r);
  const int end_dim = end_basis(r).dim;
  Json j;
  j["dims"] = dims_json(r);
  j["dims_at_most_one"] = c.dims_at_most_one;
  j["connected"] = c.connected;
  Json comps = Json::array();
  for (const auto& comp : c.components) comps.push_back(comp);
  j["components"] = comps;
  j["criterion"] = c.transitive;
  j["end_dim"] = end_dim;
  j["transitive"] = end_dim == 1;
  j["agree"] = c.transitive == (end_dim == 1);
  return j;
}

Json opmodel_cmd(const Options& o) {
  SequenceSpec lam = parse_sequence(o.lambda), w = parse_sequence(o.w);
  const bool bilateral = o.pair == "bilateral";
  OperatorPair p = bilateral ? kron_pair_bilateral(lam, w, o.n) : kron_pair_shift_rank_one(lam, w, o.n);
  const double rel = default_tolerances().relative;
  Json j;
  j["pair"] = o.pair;
  j["provenance"] = p.provenance;
  j["n"] = o.n;
  Eigen::VectorXd sa = singular_values(p.a);
  j["ker_a"] = static_cast<int>(kernel_basis(p.a, rel).cols());
  j["ker_b"] = static_cast<int>(kernel_basis(p.b, rel).cols());
  Mat ab(2 * o.n, o.n);
  ab << p.a, p.b;
  j["ker_a_cap_ker_b"] = static_cast<int>(kernel_basis(ab, rel).cols());
  j["sigma_min_over_max_a"] = sa(0) > 0 ? sa(sa.size() - 1) / sa(0) : 0.0;
  if (bilateral) j["window_start"] = window_start(o.n);
  if (o.density) {
    if (bilateral) throw PreconditionError("the density criterion is stated for the shift plus rank-one pair");
    DensityVerdict d = density_criterion(lam, w);
    j["density"] = {{"verdict", d.dense ? "dense" : "not_dense"},
                    {"lambda_nonzero", d.lambda_nonzero},
                    {"ratio_in_l2", d.ratio_in_l2},
                    {"method", d.method},
                    {"reason", d.reason}};
  }
  if (o.four_subspace) {
    SubspaceSystem s = four_subspace_from_pair(p);
    SubspaceEnd a = subspace_system_end(s), b = subspace_system_end_via_quiver(s);
    Json cols = Json::array();
    for (const Mat& m : s.subspaces) cols.push_back(static_cast<int>(m.cols()));
    j["four_subspace"] = {{"ambient", s.ambient},
                          {"subspace_dims", cols},
                          {"end_dim", a.dim},
                          {"end_dim_via_quiver", b.dim},
                          {"agree", a.dim == b.dim},
                          {"max_residual", std::max(a.max_residual, b.max_residual)},
                          {"note", "construction fixture at truncation; no transitivity claim"}};
  }
  if (o.phi) {
    PhiReport r = phi_map(p.a, p.b);
    j["phi"] = {{"end_rep_dim", r.end_rep_dim},         {"end_system_dim", r.end_system_dim},
                {"ker_dim", r.ker_dim},                 {"expected_ker_dim", r.expected_ker_dim},
                {"injective", r.injective},             {"surjective", r.surjective},
                {"image_residual", r.image_residual}};
  }
  return j;
}

Json verify_cmd(const Options& o, bool& ok) {
  std::vector<SuiteReport> reports = run_suite(o.suite, o.trials, o.seed);
  Json suites = Json::array();
  ok = true;
  for (const SuiteReport& r : reports) {
    Json checks = Json::array();
    for (const Check& c : r.checks) {
      Json cj;
      cj["name"] = c.name;
      cj["passed"] = c.passed;
      cj["total"] = c.total;
      cj["required"] = c.required;
      cj["worst_residual"] = c.worst;
      if (!c.note.empty()) cj["note"] = c.note;
      cj["ok"] = c.ok();
      checks.push_back(cj);
    }
    suites.push_back({{"suite", r.suite}, {"ok", r.ok()}, {"checks", checks}});
    ok = ok && r.ok();
  }
  Json j;
  j["suite"] = o.suite;
  j["trials"] = o.trials;
  j["results"] = suites;
  j["ok"] = ok;
  return j;
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite-dimensional quiver representation toolkit", "qrep"};
  app.require_subcommand(1);
  app.add_option("--tol", o.tol, "relative rank tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "seed for the Monte-Carlo searches");
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));

  auto* analyze_cmd = app.add_subcommand("analyze", "End dimension, transitivity and indecomposability");
  analyze_cmd->fallthrough();
  analyze_cmd->add_option("file", o.file)->required();

  auto* reflect_sub = app.add_subcommand("reflect", "apply a reflection functor at a vertex");
  reflect_sub->fallthrough();
  reflect_sub->add_option("file", o.file)->required();
  reflect_sub->add_option("--vertex", o.vertex)->required();
  reflect_sub->add_option("--dir", o.dir)->required()->check(CLI::IsMember({"plus", "minus"}));
  reflect_sub->add_flag("--verify-end-iso", o.verify_end_iso);

  auto* build_sub = app.add_subcommand("build", "extended Dynkin representations with an operator parameter");
  build_sub->fallthrough();
  build_sub->add_option("--family", o.family)
      ->required()
      ->check(CLI::IsMember({"d4tilde", "e6tilde", "e7tilde", "e8tilde", "antilde"}));
  build_sub->add_option("--op", o.op, "jordan:k[:lambda] or file:<matrix file>")->required();

  auto* cycle_sub = app.add_subcommand("cycle", "closed-form transitivity on an oriented cycle vs direct End");
  cycle_sub->fallthrough();
  cycle_sub->add_option("file", o.file)->required();

  auto* op_sub = app.add_subcommand("opmodel", "truncated operator pairs");
  op_sub->fallthrough();
  op_sub->add_option("--pair", o.pair)->required()->check(CLI::IsMember({"shift-rank-one", "bilateral"}));
  op_sub->add_option("--lambda", o.lambda, "lambda (shift-rank-one) or a (bilateral)")->required();
  op_sub->add_option("--w", o.w, "w (shift-rank-one) or b (bilateral)")->required();
  op_sub->add_option("--n", o.n, "truncation size")->required()->check(CLI::PositiveNumber);
  op_sub->add_flag("--density", o.density);
  op_sub->add_flag("--four-subspace", o.four_subspace);
  op_sub->add_flag("--phi", o.phi);

  auto* verify_sub = app.add_subcommand("verify", "property suites");
  verify_sub->fallthrough();
  verify_sub->add_option("--suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"reflection", "cyclic", "operator", "builders", "all"}));
  verify_sub->add_option("--trials", o.trials)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Tolerances& tol = default_tolerances();
  const Tolerances saved = tol;
  tol.relative = o.tol;
  int code = 0;
  try {
    Json report;
    report["command"] = join(args);
    report["tol"] = o.tol;
    report["seed"] = o.seed;
    Json body;
    if (analyze_cmd->parsed())
      body = analyze(o);
    else if (reflect_sub->parsed())
      body = reflect_cmd(o);
    else if (build_sub->parsed())
      body = build_cmd(o);
    else if (cycle_sub->parsed())
      body = cycle_cmd(o);
    else if (op_sub->parsed())
      body = opmodel_cmd(o);
    else {
      bool ok = true;
      body = verify_cmd(o, ok);
      code = ok ? 0 : 1;
    }
    merge(report, body);
    if (o.format == "json")
      out << report.dump(2) << "\n";
    else
      render_text(report, "", out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    code = 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    code = 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    code = 3;
  }
  tol = saved;
  return code;
}

}  // namespace qrep
