#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "modframe/io.hpp"
#include "modframe/modframe.hpp"

namespace modframe::cli {

using io::json;

enum Exit : int { ok = 0, verified_false = 1, error = 2, usage = 64, parse_error = 65 };

/// What a subcommand hands back: exit code plus the command specific part of the report.
struct Outcome {
  int code = Exit::ok;
  json body = json::object();
};

/// Input files are read through here so their bytes enter the digest.
class Inputs {
 public:
  explicit Inputs(const std::vector<std::string>& args) {
    for (const auto& a : args) bytes_ += a + '\n';
  }

  json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    bytes_ += text;
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      fail(ErrorCode::ParseError, path + ": " + e.what());
    }
  }

  std::string digest() const { return io::fnv1a_hex(bytes_); }

 private:
  std::string bytes_;
};

namespace detail {

inline json interval_json(const Interval& i) { return {{"lo", i.lo}, {"hi", i.hi}}; }

inline std::string side_name(Side s) { return s == Side::primal ? "primal" : "dual"; }

inline IntMatrix lattice_option(const std::string& text, std::size_t n) {
  if (text.empty()) return IntMatrix::identity(n);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, "lattice: " + std::string(e.what()));
  }
  IntMatrix m = io::int_matrix_from_json(j);
  require(m.size() == n, ErrorCode::DimensionMismatch, "lattice dimension differs from the vectors");
  return m;
}

inline std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return out;
}

/// CSV of the Gramian symbol eigenvalues: omega_1..omega_n, eig_1..eig_d.
template <ShiftSpace V>
void write_symbol_csv(const std::string& path, const GeneratorFamily<V>& f, const TorusGrid& grid) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  auto eig = gramian_symbol_eigenvalues(f, grid);
  for (std::size_t a = 0; a < grid.dim(); ++a) out << (a ? "," : "") << "omega_" << a + 1;
  for (std::size_t e = 0; e < f.size(); ++e) out << ",eig_" << e + 1;
  out << '\n' << std::setprecision(17);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(grid.points_per_axis());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    auto k = grid.index(p);
    for (std::size_t a = 0; a < k.size(); ++a) out << (a ? "," : "") << step * static_cast<double>(k[a]);
    for (double x : eig[p]) out << ',' << x;
    out << '\n';
  }
}

/// Calls fn with the family or pair decoded in the backend its generators use.
template <class Fn>
auto with_family(const json& doc, Fn&& fn) {
  if (io::document_is_piecewise(doc)) return fn(io::family_from_json<PiecewisePoly>(doc));
  return fn(io::family_from_json<FinSeq>(doc));
}

template <class Fn>
auto with_pair(const json& doc, Fn&& fn) {
  if (io::document_is_piecewise(doc)) return fn(io::pair_from_json<PiecewisePoly>(doc));
  return fn(io::pair_from_json<FinSeq>(doc));
}

template <ShiftSpace V>
json basis_report(const DualPair<V>& p) {
  auto r = verify_dual_module_bases(p);
  json j = {{"dual_frames", r.frames.holds}, {"biorthogonal", r.biorthogonal}, {"dual_bases", r.holds()}};
  return j;
}

}  // namespace detail

struct Options {
  std::string left, right, lattice, family, pair, scaling, mask, group, vector, plot, g1, center;
  std::size_t grid = 256;
  double tol = 1e-14;
  double accept = 1e-10;
  long a = 2;
};

inline Outcome cmd_bracket(Inputs& in, const Options& o) {
  json l = in.load(o.left), r = in.load(o.right);
  if (io::is_piecewise(l) != io::is_piecewise(r)) fail(ErrorCode::DimensionMismatch, "vectors use different backends");
  auto run = [&](const auto& v, const auto& w) {
    IntMatrix m = detail::lattice_option(o.lattice, dimension(v));
    LaurentPoly b = bracket(v, w, m);
    return Outcome{Exit::ok, {{"result", io::to_json(b)}, {"text", b.to_string()}}};
  };
  if (io::is_piecewise(l)) return run(io::piecewise_from_json(l), io::piecewise_from_json(r));
  return run(io::finseq_from_json(l), io::finseq_from_json(r));
}

inline Outcome cmd_gramian(Inputs& in, const Options& o) {
  return detail::with_family(in.load(o.family), [&](const auto& f) {
    LaurentMatrix g = gramian(f);
    if (!o.plot.empty()) detail::write_symbol_csv(o.plot, f, TorusGrid(f.dim(), o.grid));
    return Outcome{Exit::ok, {{"result", io::to_json(g)}}};
  });
}

inline Outcome cmd_verify_dual(Inputs& in, const Options& o) {
  return detail::with_pair(in.load(o.pair), [&](const auto& p) {
    auto r = verify_dual_module_bases(p);
    Outcome out;
    out.body["verdicts"] = {{"dual_frames", r.frames.holds}, {"biorthogonal", r.biorthogonal}, {"dual_bases", r.holds()}};
    out.body["cross_gramian"] = io::to_json(r.cross_gramian);
    if (r.frames.witness) {
      const auto& w = *r.frames.witness;
      out.body["witness"] = {{"family", detail::side_name(w.family)},
                             {"index", w.index},
                             {"analysis", detail::side_name(w.analysis)},
                             {"defect", io::to_json(w.defect)}};
    }
    out.code = r.holds() ? Exit::ok : r.frames.holds ? Exit::verified_false : Exit::error;
    return out;
  });
}

inline Outcome cmd_bounds(Inputs& in, const Options& o) {
  if (o.family.empty() == o.pair.empty()) fail(ErrorCode::InvalidArgument, "bounds needs exactly one of --family, --pair");
  auto run = [&](const auto& p, bool from_pair) {
    TorusGrid grid(p.primal.dim(), o.grid);
    Outcome out;
    auto est = spectral_frame_bounds(p.primal, grid);
    out.body["A_est"] = est.lower;
    out.body["B_est"] = est.upper;
    out.body["dual_source"] = from_pair ? "pair" : "gramian_inverse";
    auto thm = frame_bounds(p, grid);
    out.body["A_thm"] = detail::interval_json(thm.lower);
    out.body["B_thm"] = detail::interval_json(thm.upper);
    constexpr double slack = 1e-9;
    bool consistent = thm.certified_lower() <= est.lower + slack && est.upper <= thm.certified_upper() + slack;
    out.body["verdicts"] = {{"consistent", consistent}, {"singular", est.singular}};
    if (!o.plot.empty()) detail::write_symbol_csv(o.plot, p.primal, grid);
    out.code = consistent ? Exit::ok : Exit::verified_false;
    return out;
  };
  if (!o.pair.empty()) return detail::with_pair(in.load(o.pair), [&](const auto& p) { return run(p, true); });
  return detail::with_family(in.load(o.family), [&](const auto& f) {
    using V = std::decay_t<decltype(f[0])>;
    return run(DualPair<V>(f, dual_basis_from_gramian(f)), false);
  });
}

inline Outcome cmd_canonical_dual(Inputs& in, const Options& o) {
  return detail::with_family(in.load(o.family), [&](const auto& f) {
    TorusGrid grid(f.dim(), o.grid);
    auto c = canonical_dual_numeric(f, grid, o.tol);
    if (!o.plot.empty()) detail::write_symbol_csv(o.plot, f, grid);
    bool good = c.residual < o.accept;
    Outcome out{good ? Exit::ok : Exit::verified_false, {}};
    out.body["result"] = io::to_json(c.dual);
    out.body["residual"] = c.residual;
    out.body["verdicts"] = {{"reconstructs", good}};
    return out;
  });
}

inline Outcome cmd_wavelet2(Inputs& in, const Options& o) {
  json doc = in.load(o.scaling);
  Exponent g1 = io::parse_exponent(o.g1);
  Outcome out;
  if (io::document_is_piecewise(doc)) {
    auto p = io::pair_from_json<PiecewisePoly>(doc);
    require(p.size() == 1, ErrorCode::InvalidArgument, "the q = 2 formula takes one scaling function per side");
    auto wf = wavelet_q2_function(p.primal[0], p.dual[0], g1, o.a);
    Mask m = refinement_solve(p.primal[0], o.a), mt = refinement_solve(p.dual[0], o.a);
    auto wm = wavelet_q2_masks(m, mt, g1);
    bool agree = expand_in_dilated(wf.psi, {p.primal[0]}, o.a)[0] == wm.w.coeffs &&
                 expand_in_dilated(wf.psit, {p.dual[0]}, o.a)[0] == wm.wt.coeffs;
    out.body["result"] = io::to_json(DualPair<PiecewisePoly>(GeneratorFamily<PiecewisePoly>({wf.psi}),
                                                             GeneratorFamily<PiecewisePoly>({wf.psit})));
    out.body["masks"] = {{"w", io::to_json(wm.w)}, {"wt", io::to_json(wm.wt)}};
    out.body["identities"] = {{"phi_psit", io::to_json(wf.phi_psit)},
                              {"phit_psi", io::to_json(wf.phit_psi)},
                              {"psi_psit", io::to_json(wf.psi_psit)}};
    out.body["verdicts"] = {{"biorthogonal_wavelets", wf.verified},
                            {"perfect_reconstruction", wm.perfect_reconstruction},
                            {"function_mask_agree", agree}};
    out.code = wf.verified && wm.perfect_reconstruction && agree ? Exit::ok : Exit::verified_false;
    return out;
  }
  const json& prim = io::field(doc, "primal");
  const json& dual = io::field(doc, "dual");
  require(prim.size() == 1 && dual.size() == 1, ErrorCode::InvalidArgument, "the q = 2 formula takes one mask per side");
  long q = io::radicand_of(doc, 1);
  Mask m = io::mask_from_json(prim[0], q), mt = io::mask_from_json(dual[0], q);
  auto wm = wavelet_q2_masks(m, mt, g1);
  out.body["result"] = {{"w", io::to_json(wm.w)}, {"wt", io::to_json(wm.wt)}};
  out.body["cross_gramian"] = io::to_json(wm.cross);
  out.body["verdicts"] = {{"perfect_reconstruction", wm.perfect_reconstruction}};
  out.code = wm.perfect_reconstruction ? Exit::ok : Exit::verified_false;
  return out;
}

inline Outcome cmd_complete_1d(Inputs& in, const Options& o) {
  return detail::with_pair(in.load(o.pair), [&](const auto& p) {
    auto c = biorthogonal_completion_1d(p);
    json v = detail::basis_report(c);
    Outcome out{v["dual_bases"].get<bool>() ? Exit::ok : Exit::verified_false, {}};
    out.body["result"] = io::to_json(c);
    out.body["r"] = c.size();
    out.body["verdicts"] = v;
    return out;
  });
}

inline Outcome cmd_wavelet_space(Inputs& in, const Options& o) {
  auto s = io::pair_from_json<PiecewisePoly>(in.load(o.scaling));
  auto w = wavelet_space_presentation(s, Dilation::scalar(o.a));
  json v = detail::basis_report(w);
  bool orth = gramian(s.primal, w.dual).is_zero() && gramian(w.primal, s.dual).is_zero();
  v["orthogonal_to_scaling"] = orth;
  Outcome out{v["dual_bases"].get<bool>() && orth ? Exit::ok : Exit::verified_false, {}};
  out.body["result"] = io::to_json(w);
  out.body["generators"] = w.size();
  out.body["verdicts"] = v;
  return out;
}

inline Outcome cmd_symmetry_check(Inputs& in, const Options& o) {
  Mask m = io::mask_from_json(in.load(o.mask));
  PointGroup h = io::group_from_json(in.load(o.group));
  auto aff = verify_affiliated(h, m.dilation);
  json checks = json::array();
  for (const auto& c : aff.checks)
    checks.push_back({{"h", io::to_json(c.h)}, {"commutes", c.commutes}, {"coset", c.coset}});
  Outcome out;
  out.body["affiliation"] = checks;
  json v = {{"affiliated", aff.holds()}};
  bool all = aff.holds();
  if (aff.holds() && !o.g1.empty()) {
    bool s = symmetric_wavelet_verify(m, h, io::parse_exponent(o.g1));
    v["wavelet_symmetric"] = s;
    all = all && s;
  }
  if (aff.holds() && !o.center.empty()) {
    bool s = mask_symmetry_check(m, h, detail::rational_list(o.center));
    v["scaling_symmetric"] = s;
    all = all && s;
  }
  out.body["verdicts"] = v;
  out.code = all ? Exit::ok : Exit::verified_false;
  return out;
}

inline Outcome cmd_classify_2d(Inputs&, const Options&) {
  json table = json::array();
  bool all = true;
  for (const auto& f : canonical_forms_2d()) {
    bool aff = verify_affiliated(f.h, f.a).holds();
    all = all && aff;
    table.push_back({{"group", f.group}, {"H", io::to_json(f.h)}, {"A", io::to_json(f.a.matrix())}, {"affiliated", aff}});
  }
  return {all ? Exit::ok : Exit::verified_false, {{"result", table}, {"verdicts", {{"all_affiliated", all}}}}};
}

inline Outcome cmd_parseval_check(Inputs& in, const Options& o) {
  json doc = in.load(o.vector);
  auto run = [&](const auto& v) {
    auto r = parseval_compact_check(v, detail::lattice_option(o.lattice, dimension(v)));
    bool orth = r.verdict == ParsevalVerdict::orthonormal;
    Outcome out{orth ? Exit::ok : Exit::verified_false, {}};
    out.body["verdict"] = orth ? "orthonormal" : "not_parseval";
    out.body["gramian"] = io::to_json(r.gramian);
    out.body["defect"] = io::to_json(r.defect);
    return out;
  };
  if (io::is_piecewise(doc)) return run(io::piecewise_from_json(doc));
  return run(io::finseq_from_json(doc));
}

namespace detail {

inline void render_human(std::ostream& os, const json& j, const std::string& indent = "") {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object() && k == "verdicts") {
      os << indent << k << ":\n";
      render_human(os, v, indent + "  ");
    } else if (v.is_string()) {
      os << indent << k << ": " << v.get<std::string>() << '\n';
    } else {
      os << indent << k << ": " << v.dump() << '\n';
    }
  }
}

}  // namespace detail

/// Parses args (without the program name), runs the subcommand and prints the report.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Module frames, brackets and wavelets over Laurent polynomial rings", "modframe"};
  app.require_subcommand(1);
  Options o;
  bool human = false;
  app.add_flag("--human", human, "Print a text report instead of JSON");

  using Command = std::function<Outcome(Inputs&, const Options&)>;
  std::vector<std::pair<CLI::App*, Command>> commands;
  auto sub = [&](const char* name, const char* help, Command fn) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_flag("--human", human, "Print a text report instead of JSON");
    commands.emplace_back(s, std::move(fn));
    return s;
  };
  auto grid = [&](CLI::App* s) { s->add_option("--grid", o.grid, "Points per torus axis")->check(CLI::Range(2, 1 << 16)); };
  auto plot = [&](CLI::App* s) { s->add_option("--plot-symbol", o.plot, "Write Gramian symbol eigenvalues as CSV"); };

  auto* s = sub("bracket", "Bracket of two vectors", cmd_bracket);
  s->add_option("--left", o.left, "First vector")->required();
  s->add_option("--right", o.right, "Second vector")->required();
  s->add_option("--lattice", o.lattice, "Lattice matrix as JSON, identity by default");

  s = sub("gramian", "Gramian of a generator family", cmd_gramian);
  s->add_option("--family", o.family, "Generator family")->required();
  grid(s);
  plot(s);

  s = sub("verify-dual", "Check a pair of families for dual module frames and bases", cmd_verify_dual);
  s->add_option("--pair", o.pair, "Dual pair")->required();

  s = sub("bounds", "Frame bounds from the dual pair and from the Gramian symbol", cmd_bounds);
  s->add_option("--family", o.family, "Family with unimodular Gramian");
  s->add_option("--pair", o.pair, "Dual pair");
  grid(s);
  plot(s);

  s = sub("canonical-dual", "Canonical dual family by symbol inversion", cmd_canonical_dual);
  s->add_option("--family", o.family, "Generator family")->required();
  s->add_option("--tol", o.tol, "Relative truncation tolerance");
  s->add_option("--accept", o.accept, "Largest accepted reconstruction residual");
  grid(s);
  plot(s);

  s = sub("wavelet2", "Wavelets for a dilation of determinant 2", cmd_wavelet2);
  s->add_option("--scaling", o.scaling, "Scaling functions or masks as a dual pair")->required();
  s->add_option("--g1", o.g1, "Nonzero coset representative, e.g. \"1\" or \"1,0\"")->required();
  s->add_option("--a", o.a, "Scalar dilation for scaling functions");

  s = sub("complete-1d", "Bi-orthogonal completion of dual module frames in one variable", cmd_complete_1d);
  s->add_option("--pair", o.pair, "Dual pair")->required();

  s = sub("wavelet-space", "Wavelet generators for a bi-orthogonal scaling pair", cmd_wavelet_space);
  s->add_option("--scaling", o.scaling, "Scaling dual pair (piecewise polynomials)")->required();
  s->add_option("--a", o.a, "Scalar dilation");

  s = sub("symmetry-check", "Affiliation and mask symmetry checks", cmd_symmetry_check);
  s->add_option("--mask", o.mask, "Mask with dilation")->required();
  s->add_option("--group", o.group, "Point group")->required();
  s->add_option("--g1", o.g1, "Wavelet symmetry about g1");
  s->add_option("--center", o.center, "Scaling symmetry about a rational center, e.g. \"1/2\"");

  sub("classify-2d", "Planar dilations with affiliated groups", cmd_classify_2d);

  s = sub("parseval-check", "Parseval test for a single compactly supported generator", cmd_parseval_check);
  s->add_option("--vector", o.vector, "Generator")->required();
  s->add_option("--lattice", o.lattice, "Lattice matrix as JSON, identity by default");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return Exit::usage;
  }

  for (const auto& [app_ptr, fn] : commands) {
    if (!app_ptr->parsed()) continue;
    Inputs in(args);
    json report = {{"command", app_ptr->get_name()}};
    int code = Exit::error;
    auto start = std::chrono::steady_clock::now();
    try {
      Outcome r = fn(in, o);
      report.update(r.body);
      code = r.code;
    } catch (const Error& e) {
      code = e.code() == ErrorCode::ParseError ? Exit::parse_error : Exit::error;
      report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
      err << e.what() << '\n';
    } catch (const std::exception& e) {
      report["error"] = {{"code", "Internal"}, {"message", e.what()}};
      err << e.what() << '\n';
    }
    report["inputs_digest"] = in.digest();
    report["exit_code"] = code;
    report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (human)
      detail::render_human(out, report);
    else
      out << report.dump(2) << '\n';
    return code;
  }
  return Exit::usage;
}

}  // namespace modframe::cli
