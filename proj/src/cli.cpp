#include "keller/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "keller/census.hpp"
#include "keller/dynamics.hpp"
#include "keller/elimination.hpp"
#include "keller/errors.hpp"
#include "keller/inversion.hpp"
#include "keller/parser.hpp"
#include "keller/unipoly.hpp"

namespace keller::cli {

namespace {

std::vector<std::string> inverse_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("u" + std::to_string(i));
  return names;
}

void print_map(std::ostream& os, const std::vector<std::string>& lhs, const PolyMap& m,
               const std::vector<std::string>& vars) {
  for (std::size_t i = 0; i < m.arity(); ++i) os << lhs[i] << " = " << to_string(m[i], vars) << "\n";
}

std::string point_text(const Point2& p) { return "(" + p[0].get_str() + ", " + p[1].get_str() + ")"; }

// Writes to --out when given, else to out.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw StructuralError("cannot write '" + path + "'");
  f << text;
}

std::string series_report(const census::GrowthSeries& s, bool csv) {
  return csv ? census::to_csv(s) : census::to_json(s);
}

std::vector<std::string> plane_vars() { return {"x", "y"}; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for polynomial maps with constant Jacobian", "keller"};
  app.require_subcommand(1);
  int code = kOk;

  // jac
  std::string jac_file;
  auto* jac = app.add_subcommand("jac", "Jacobian determinant and Keller verdict");
  jac->add_option("mapfile", jac_file)->required();
  jac->callback([&] {
    const MapFile mf = load_map_file(jac_file);
    const KellerCheck kc = is_keller(mf.map);
    out << "J = " << to_string(kc.jacobian, mf.variables) << "\n";
    out << "keller: " << (kc.keller ? "true" : "false") << "\n";
  });

  // invert
  std::string inv_file;
  std::optional<int> inv_bound;
  auto* inv = app.add_subcommand("invert", "Polynomial inverse by the degree-bounded ansatz");
  inv->add_option("mapfile", inv_file)->required();
  inv->add_option("--bound", inv_bound, "Total degree bound (default deg(P)^(n-1))")->check(CLI::PositiveNumber);
  inv->callback([&] {
    const MapFile mf = load_map_file(inv_file);
    const InverseResult r = ansatz_inverse(mf.map, inv_bound);
    out << "status: " << to_string(r.status) << "\n";
    out << "keller: " << (r.keller ? "true" : "false") << "\n";
    out << "degree_bound: " << r.degree_bound_used << "\n";
    if (r.status != InverseStatus::inverse_found) {
      code = kNegative;
      return;
    }
    out << "certificate: " << to_string(r.certificate) << "\n";
    if (mf.map.arity() == 2 && r.keller) {
      const auto g = rational_inverse_from_annihilator(mf.map);
      out << "annihilator criterion: "
          << (g ? (*g == *r.inverse ? "degree 1, same inverse" : "degree 1, DIFFERENT inverse")
                : "inconclusive (degree > 1)")
          << "\n";
      if (g && !(*g == *r.inverse)) throw Anomaly("invert: the two inverses disagree");
    }
    print_map(out, mf.variables, *r.inverse, inverse_names(mf.map.arity()));
  });

  // annihilator
  std::string ann_file;
  unsigned ann_coord = 1;
  bool ann_no_check = false;
  auto* ann = app.add_subcommand("annihilator", "Phi(u1, u2, z) with Phi(f, g, x_coord) = 0");
  ann->add_option("mapfile", ann_file)->required();
  ann->add_option("--coord", ann_coord)->check(CLI::IsMember({1u, 2u}));
  ann->add_flag("--no-keller-check", ann_no_check, "Accept maps whose Jacobian is not constant");
  ann->callback([&] {
    const MapFile mf = load_map_file(ann_file);
    AnnihilatorOptions opts;
    opts.require_keller = !ann_no_check;
    const Annihilator a = annihilator(mf.map, ann_coord, opts);
    out << "phi = " << to_string(a.phi, annihilator_variable_names()) << "\n";
    out << "deg_z: " << a.deg_z << "\n";
    out << "verified: " << (a.verified ? "true" : "false") << "\n";
  });

  // census
  auto* cen = app.add_subcommand("census", "Integer-grid censuses");
  cen->require_subcommand(1);
  int jobs = 0;
  bool as_json = false, as_csv = false, timing = false, probe = false;
  std::string out_path;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--jobs", jobs, "Worker threads (default: all)")->check(CLI::NonNegativeNumber);
    auto* j = sub->add_flag("--json", as_json, "JSON report (default)");
    auto* c = sub->add_flag("--csv", as_csv, "CSV report");
    j->excludes(c);
    sub->add_option("--out", out_path, "Write the report here instead of standard output");
  };

  std::string pre_file;
  long pre_n = 0;
  auto* pre = cen->add_subcommand("preimage", "Preimage census over [-N, N]^2");
  pre->add_option("mapfile", pre_file)->required();
  pre->add_option("--n", pre_n, "Box radius")->required()->check(CLI::NonNegativeNumber);
  pre->add_flag("--timing", timing, "Fill in elapsed_ms");
  pre->add_flag("--probe", probe, "Try to recover a polynomial symmetry from multi-preimage points");
  add_common(pre);
  pre->callback([&] {
    const MapFile mf = load_map_file(pre_file);
    const auto report = census::injectivity_census(mf.map, pre_n, jobs);
    if (as_csv) {
      std::ostringstream os;
      os << "n,total_points,unique_count,multi_count,degenerate,degree_drop,reducible,multi\n"
         << report.n << ',' << report.total_points << ',' << report.unique_count << ','
         << report.multi_count << ',' << report.bad_pairs.degenerate << ','
         << report.bad_pairs.degree_drop << ',' << report.bad_pairs.reducible << ','
         << report.bad_pairs.multi << "\n";
      emit(out, out_path, os.str());
    } else {
      emit(out, out_path, census::to_json(report, timing));
    }
    if (!probe) return;
    const auto diag = census::symmetry_probe(mf.map, report.multi_records);
    if (!diag) {
      err << "probe: no polynomial symmetry of bounded degree fits\n";
      return;
    }
    err << "probe: Q = " << to_string(diag->q, mf.variables) << "\n";
    err << "probe: P o Q = P: " << (diag->pq.identical ? "true" : "false") << "\n";
    err << "probe: order: " << (diag->order.order ? std::to_string(*diag->order.order) : "none") << "\n";
    err << "probe: fixed locus: " << to_string(diag->fixed.kind) << "\n";
    if (diag->anomaly) throw Anomaly("probe: symmetry of a Keller map has a fixed point");
  });

  std::string red_file;
  std::vector<long> ns;
  auto* red = cen->add_subcommand("reducible", "Pairs (x0, y0) with A(x0, y0, z) reducible");
  red->add_option("polyfile", red_file)->required();
  red->add_option("--ns", ns, "Box radii, comma separated")->required()->delimiter(',');
  add_common(red);
  red->callback([&] {
    const MultiPoly a = load_polynomial_file(red_file, {"x", "y", "z"});
    emit(out, out_path, series_report(census::reducibility_census(a, ns, jobs), as_csv));
  });

  std::string num_text, den_text;
  auto* integ = cen->add_subcommand("integral", "Pairs with num(x0, y0) / den(x0, y0) an integer");
  integ->add_option("--num", num_text, "Numerator polynomial")->required();
  integ->add_option("--den", den_text, "Denominator polynomial")->required();
  integ->add_option("--ns", ns, "Box radii, comma separated")->required()->delimiter(',');
  add_common(integ);
  integ->callback([&] {
    const MultiPoly a = parse_expression(num_text, plane_vars());
    const MultiPoly b = parse_expression(den_text, plane_vars());
    emit(out, out_path, series_report(census::integrality_census(a, b, ns, jobs), as_csv));
  });

  std::string var_file;
  auto* var = cen->add_subcommand("variety", "Integer points of R(x, y) = 0");
  var->add_option("polyfile", var_file)->required();
  var->add_option("--ns", ns, "Box radii, comma separated")->required()->delimiter(',');
  add_common(var);
  var->callback([&] {
    const MultiPoly r = load_polynomial_file(var_file, plane_vars());
    emit(out, out_path, series_report(census::variety_point_count(r, ns, jobs), as_csv));
  });

  // order
  std::string ord_file;
  unsigned ord_max = kDefaultOrderLimit;
  auto* ord = app.add_subcommand("order", "Smallest t with Q^t = identity");
  ord->add_option("mapfile", ord_file)->required();
  ord->add_option("--max", ord_max, "Largest t to try")->check(CLI::PositiveNumber);
  ord->callback([&] {
    const MapFile mf = load_map_file(ord_file);
    const OrderResult r = detect_order(mf.map, ord_max);
    if (r.order) {
      out << "order: " << *r.order << "\n";
      return;
    }
    out << "order: none\n";
    out << "iterations_checked: " << r.iterations_checked << "\n";
    if (r.degree_guard_hit) out << "stopped: iterate degree exceeded " << kDefaultOrderDegreeGuard << "\n";
    code = kNegative;
  });

  // fixed-points
  std::string fix_file;
  auto* fix = app.add_subcommand("fixed-points", "Fixed points of a plane map");
  fix->add_option("mapfile", fix_file)->required();
  fix->callback([&] {
    const MapFile mf = load_map_file(fix_file);
    const FixedLocus f = fixed_points(mf.map);
    out << "kind: " << to_string(f.kind) << "\n";
    for (const auto& p : f.rational_points) out << "point: " << point_text(p) << "\n";
    for (const auto& d : f.defining_polynomials) out << "defining: " << to_string(d, mf.variables) << "\n";
    if (f.kind != LocusKind::positive_dimensional) {
      out << "complex_solutions: " << (f.complex_solutions ? "true" : "false") << "\n";
      if (f.leading_degenerate) out << "leading_degenerate: true\n";
    }
  });

  // classify-affine
  std::string aff_file;
  auto* aff = app.add_subcommand("classify-affine", "Eigen-structure, fixed point and order of an affine map");
  aff->add_option("mapfile", aff_file)->required();
  aff->callback([&] {
    const MapFile mf = load_map_file(aff_file);
    const LinearClassification c = classify_affine(mf.map);
    const auto& m = c.matrix;
    out << "L: [[" << m[0][0].get_str() << ", " << m[0][1].get_str() << "], [" << m[1][0].get_str()
        << ", " << m[1][1].get_str() << "]]\n";
    out << "b: " << point_text(c.offset) << "\n";
    out << "trace: " << c.trace.get_str() << "\n";
    out << "det: " << c.determinant.get_str() << "\n";
    out << "det_is_one: " << (c.det_is_one ? "true" : "false") << "\n";
    out << "characteristic: " << to_string(c.characteristic, "z") << "\n";
    if (!c.eigenvalues.empty()) {
      out << "eigenvalues: " << c.eigenvalues[0].get_str() << ", " << c.eigenvalues[1].get_str() << "\n";
    }
    out << "jordan: " << to_string(c.jordan) << "\n";
    out << "fixed_point: " << (c.fixed_point ? point_text(*c.fixed_point) : "none") << "\n";
    out << "finite_order: " << (c.finite_order ? std::to_string(*c.finite_order) : "none") << "\n";
  });

  // pq-check
  std::string pq_p, pq_q;
  auto* pq = app.add_subcommand("pq-check", "Is P o Q = P?");
  pq->add_option("mapfileP", pq_p)->required();
  pq->add_option("mapfileQ", pq_q)->required();
  pq->callback([&] {
    const MapFile p = load_map_file(pq_p);
    const MapFile q = load_map_file(pq_q);
    const PQCheck r = pq_check(p.map, q.map);
    out << (r.identical ? "identical" : "different") << "\n";
    for (const auto& d : r.difference) out << "difference: " << to_string(d, p.variables) << "\n";
    if (!r.identical) code = kNegative;
  });

  // factor
  std::string fac_text;
  auto* fac = app.add_subcommand("factor", "Factor a univariate polynomial over Z");
  fac->add_option("poly", fac_text, "Polynomial in one variable, e.g. \"z^4 - 1\"")->required();
  fac->callback([&] {
    const auto ids = identifiers_in(fac_text);
    if (ids.size() > 1) throw ParseError("expected a polynomial in one variable", 1, 1);
    const std::string v = ids.empty() ? "z" : ids[0];
    const UniPoly p = to_unipoly(parse_expression(fac_text, {v}), 0);
    out << to_string(factor_over_Z(p), v) << "\n";
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputInconsistency& e) {
    err << "inconsistent input: " << e.what() << "\n";
    return kUsage;
  } catch (const Anomaly& e) {
    err << "ANOMALY: " << e.what() << "\n";
    return kFailure;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kFailure;
  }
  return code;
}

}  // namespace keller::cli
