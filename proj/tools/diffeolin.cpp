// Command-line front end. Every subcommand prints a human-readable summary,
// or with --json a single object {command, inputs, result, verdicts}.
// Exit codes: 0 ok (including UNKNOWN verdicts), 1 failed verification,
// 2 input error.

#include "diffeolin/bilinear.hpp"
#include "diffeolin/oracle.hpp"
#include "diffeolin/parser.hpp"
#include "diffeolin/space_file.hpp"
#include "diffeolin/tensor.hpp"
#include "diffeolin/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

using namespace diffeolin;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

struct Output {
  std::string command;
  json inputs = json::object();
  json result = json::object();
  json verdicts = json::array();
  std::ostringstream text;
  int exit_code = kOk;

  /// Records a named verdict. UNKNOWN is rendered distinctly and never
  /// changes the exit code.
  void verdict(const std::string& name, const std::string& value, const std::string& reason = "") {
    const std::string shown = value == "Unknown" ? "UNKNOWN" : value;
    json v = {{"name", name}, {"verdict", shown}};
    if (!reason.empty()) v["reason"] = reason;
    verdicts.push_back(std::move(v));
    text << name << ": " << shown;
    if (!reason.empty()) text << "  (" << reason << ")";
    text << "\n";
  }
  /// A pass/fail verification; failures set exit code 1.
  void check(const std::string& name, bool passed, const std::string& detail = "") {
    verdict(name, passed ? "PASS" : "FAIL", detail);
    if (!passed) exit_code = kFailed;
  }
};

json to_json(const Rational& r) { return to_string(r); }

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

json to_json(const Subspace& s) { return {{"dim", s.dim()}, {"ambient_dim", s.ambient_dim()}, {"basis", to_json(s.basis())}}; }

std::string vector_text(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

std::string basis_text(const Subspace& s) {
  if (s.dim() == 0) return "{0}";
  std::string out = "span{";
  for (std::size_t a = 0; a < s.dim(); ++a) out += (a ? ", " : "") + vector_text(s.basis_vector(a));
  return out + "}";
}

void describe_space(Output& out, const std::string& key, const std::string& name, const DiffSpace& v) {
  out.inputs[key] = {{"name", name}, {"dim", v.dim()}, {"diffeology", v.describe()}};
}

// --- subcommands -------------------------------------------------------------

void run_dual(Output& out, const SpaceFile& file, const std::string& name) {
  const DiffSpace& v = file.space(name);
  describe_space(out, "space", name, v);
  const DualSpace d = diffeological_dual(v);
  out.result = {{"dim", d.dim()}, {"singular_span", to_json(singular_span(v))}, {"dual_basis", to_json(d.annihilator)}};
  out.text << "V = " << v.describe() << "\n";
  out.text << "singular span S_V = " << basis_text(singular_span(v)) << "\n";
  out.text << "dim V* = " << d.dim() << "\n";
  out.text << "V* = Ann(S_V) = " << basis_text(d.annihilator) << "\n";
}

void run_hom(Output& out, const SpaceFile& file, const std::string& vn, const std::string& wn) {
  const DiffSpace& v = file.space(vn);
  const DiffSpace& w = file.space(wn);
  describe_space(out, "V", vn, v);
  describe_space(out, "W", wn, w);
  const Subspace s = smooth_hom_basis(v, w);
  out.result = {{"dim", s.dim()}, {"full_dim", v.dim() * w.dim()}, {"smooth_maps", to_json(s)}};
  out.text << "dim L(V, W) = " << v.dim() * w.dim() << "\n";
  out.text << "dim L^inf(V, W) = " << s.dim() << "\n";
  out.text << "basis (entry (i, j) at index i*" << v.dim() << "+j): " << basis_text(s) << "\n";
}

void run_bilinear(Output& out, const SpaceFile& file, const std::string& vn, const std::string& wn) {
  const DiffSpace& v = file.space(vn);
  const DiffSpace& w = file.space(wn);
  describe_space(out, "V", vn, v);
  describe_space(out, "W", wn, w);
  const Subspace bil = smooth_bilinear_basis(v, w);
  const Subspace cur = smooth_curried_basis(v, w);
  bool bijective = bil.dim() == cur.dim();
  for (std::size_t a = 0; a < bil.dim() && bijective; ++a)
    bijective = cur.contains(curried_coordinates(to_curried(bilinear_from_coordinates(v, w, bil.basis_vector(a)))));
  out.result = {{"bilinear_dim", bil.dim()},
                {"curried_dim", cur.dim()},
                {"full_dim", v.dim() * v.dim() * w.dim()},
                {"smooth_bilinear", to_json(bil)}};
  out.text << "dim B^inf(V x V, W) = " << bil.dim() << "\n";
  out.text << "dim L^inf(V, L^inf(V, W)) = " << cur.dim() << "\n";
  out.check("curry correspondence", bijective);
}

void run_tensor(Output& out, const SpaceFile& file, const std::string& vn, const std::string& wn, bool dual_iso) {
  const DiffSpace& v = file.space(vn);
  const DiffSpace& w = file.space(wn);
  describe_space(out, "V", vn, v);
  describe_space(out, "W", wn, w);
  const DiffSpace t = tensor_product(v, w);
  out.result = {{"dim", t.dim()}, {"singular_span", to_json(singular_span(t))}};
  out.text << "dim V (x) W = " << t.dim() << "\n";
  out.text << "dim S_{V (x) W} = " << singular_span(t).dim() << "\n";
  if (!dual_iso) return;
  try {
    const TensorDualIso iso = tensor_dual_iso(v, w);
    out.result["dual_iso"] = {{"dim_left_dual", iso.left.dim()},
                              {"dim_right_dual", iso.right.dim()},
                              {"dim_product_dual", iso.product.dim()},
                              {"matrix", to_json(iso.map.matrix())}};
    out.text << "dim V* = " << iso.left.dim() << ", dim W* = " << iso.right.dim()
             << ", dim (V (x) W)* = " << iso.product.dim() << "\n";
    out.check("V* (x) W* -> (V (x) W)* is an isomorphism", true);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const UnsupportedError*>(&e)) throw;
    out.check("V* (x) W* -> (V (x) W)* is an isomorphism", false, e.what());
  }
}

void run_check_map(Output& out, const SpaceFile& file, const std::string& name, const MembershipConfig& config) {
  const LinearMap& f = file.map(name);
  out.inputs["map"] = {{"name", name}, {"matrix", to_json(f.matrix())}};
  describe_space(out, "from", name + ".from", f.domain());
  describe_space(out, "to", name + ".to", f.codomain());
  const SmoothDecision d = is_smooth_linear(f, config);
  out.result = {{"verdict", d.verdict == Smoothness::Unknown ? "UNKNOWN" : to_string(d.verdict)}, {"reason", d.reason}};
  if (d.witness) out.result["witness"] = d.witness->to_string();
  out.text << f.domain().describe() << " -> " << f.codomain().describe() << "\n";
  out.verdict("smooth", to_string(d.verdict), d.reason);
  if (d.witness) out.text << "witness plot: " << d.witness->to_string() << "\n";
}

void run_check_plot(Output& out, const SpaceFile& file, const std::string& name, const std::vector<std::string>& exprs,
                    const MembershipConfig& config) {
  const DiffSpace& v = file.space(name);
  describe_space(out, "space", name, v);
  const Plot c = parse_plot(exprs, v.dim());
  out.inputs["plot"] = c.to_string();
  const PlotDecision d = is_plot(v, c, config);
  out.result = {{"verdict", d.verdict == Membership::Unknown ? "UNKNOWN" : to_string(d.verdict)}, {"reason", d.reason}};
  if (d.certificate) out.result["certificate"] = to_json(*d.certificate);
  if (!d.factorization.empty()) {
    json terms = json::array();
    for (const auto& t : d.factorization)
      terms.push_back({{"generator", t.generator}, {"scale", to_json(t.scale)}, {"multiplier", t.multiplier.to_string()}});
    out.result["factorization"] = terms;
  }
  out.text << "c = " << c.to_string() << "\n";
  out.verdict("plot", to_string(d.verdict), d.reason);
  if (d.certificate) out.text << "certificate functional: " << vector_text(*d.certificate) << "\n";
  for (const auto& t : d.factorization)
    out.text << "  term: (" << t.multiplier.to_string() << ") * g" << t.generator << "(" << to_string(t.scale) << "*x)\n";
}

void run_hat_dual(Output& out, const SpaceFile& file, const std::string& name, const std::string& iso_text,
                  const std::string& iso2_text, const std::vector<std::string>& sample_texts,
                  const MembershipConfig& config) {
  const DiffSpace& v = file.space(name);
  describe_space(out, "space", name, v);
  const Matrix iso = parse_matrix_text(iso_text);
  if (iso.rows() != v.dim() || iso.cols() != v.dim())
    throw InputError("--iso must be " + std::to_string(v.dim()) + "x" + std::to_string(v.dim()));
  if (!inverse(iso)) throw InputError("--iso is not invertible");
  out.inputs["iso"] = to_json(iso);
  const DiffSpace hat = hat_dual(v, iso);
  out.result = {{"dim", hat.dim()}, {"singular_span", to_json(singular_span(hat))}};
  out.text << "hat V* = " << hat.describe() << "\n";
  out.text << "singular span = " << basis_text(singular_span(hat)) << "\n";
  if (iso2_text.empty()) return;

  const Matrix iso2 = parse_matrix_text(iso2_text);
  if (iso2.rows() != v.dim() || iso2.cols() != v.dim() || !inverse(iso2))
    throw InputError("--iso2 must be an invertible " + std::to_string(v.dim()) + "x" + std::to_string(v.dim()) + " matrix");
  out.inputs["iso2"] = to_json(iso2);
  std::vector<Plot> samples;
  for (const auto& s : sample_texts) samples.push_back(parse_plot({s}, v.dim()));
  if (samples.empty()) {
    // Pushed-forward generators and the coordinate kinks.
    if (v.is<descriptor::Generated>())
      for (const auto& g : v.as<descriptor::Generated>().generators) samples.push_back(g.transformed(iso));
    for (std::size_t i = 0; i < v.dim(); ++i) samples.push_back(Plot::kink(unit_vector(v.dim(), i)));
  }
  const WellposednessReport r = hat_dual_wellposed(v, iso, iso2, samples, config);
  json rows = json::array();
  for (std::size_t s = 0; s < samples.size(); ++s) {
    rows.push_back({{"sample", samples[s].to_string()},
                    {"first", to_string(r.first[s])},
                    {"second", to_string(r.second[s])},
                    {"transported", to_string(r.transported[s])}});
    out.text << "  " << samples[s].to_string() << ": " << to_string(r.first[s]) << " / " << to_string(r.second[s])
             << " (transported: " << to_string(r.transported[s]) << ")\n";
  }
  out.result["samples"] = rows;
  out.check("same plots under both isomorphisms", r.consistent(),
            std::to_string(r.violations.size()) + " of " + std::to_string(samples.size()) + " samples differ");
  out.check("iso2 * iso^-1 carries plots to plots", r.transport_failures == 0);
}

void run_oracle(Output& out, const std::string& text, bool trace) {
  const FunctionExpr f = parse_input_expr(text);
  out.inputs["expression"] = f.to_string();
  std::vector<OracleSample> samples;
  const OracleClass c = classify(f, {}, &samples);
  const bool exact = is_smooth(f);
  out.result = {{"classification", c.to_string()}, {"symbolic_smooth", exact}};
  json records = json::array();
  for (const auto& s : samples)
    records.push_back({{"expression", f.to_string()}, {"order", s.order}, {"scale", s.scale}, {"value", s.value},
                       {"verdict", s.status}});
  out.result["trials"] = records;
  out.text << "f(x) = " << f.to_string() << "\n";
  out.text << "numeric: " << c.to_string() << "\n";
  out.text << "symbolic: " << (exact ? "smooth" : "not smooth") << "\n";
  if (trace) {
    out.text << std::setw(6) << "order" << std::setw(14) << "h" << std::setw(26) << "difference"
             << "  status\n";
    for (const auto& s : samples)
      out.text << std::setw(6) << s.order << std::setw(14) << s.scale << std::setw(26) << std::setprecision(15) << s.value
               << "  " << s.status << "\n";
  }
  out.check("oracle agrees with symbolic verdict", exact == c.smooth_like());
}

void run_cross_validate(Output& out, const SpaceFile& file, const std::string& name, const std::string& functional_text,
                        std::size_t trials, std::uint64_t seed) {
  const DiffSpace& v = file.space(name);
  describe_space(out, "space", name, v);
  const Vector functional = parse_vector_text(functional_text);
  if (functional.size() != v.dim())
    throw InputError("--functional must have " + std::to_string(v.dim()) + " entries");
  out.inputs["functional"] = to_json(functional);
  out.inputs["trials"] = trials;
  out.inputs["seed"] = seed;
  const CrossValidationReport r = cross_validate(v, functional, trials, seed);
  json records = json::array();
  for (const auto& t : r.trials)
    records.push_back({{"expression", t.composed.to_string()},
                       {"order", t.numeric.order},
                       {"sample", t.sample.to_string()},
                       {"numeric", t.numeric.to_string()},
                       {"symbolic_smooth", t.symbolic_smooth},
                       {"verdict", t.agrees ? "agree" : "disagree"}});
  out.result = {{"symbolic_verdict", r.symbolic_verdict},
                {"skipped", r.skipped},
                {"agreements", r.agreements},
                {"agreement_rate", r.agreement_rate()},
                {"trials", records}};
  out.verdict("functional", r.symbolic_verdict);
  if (r.skipped) {
    out.text << "coarse space: no sampled representation, trials skipped\n";
    return;
  }
  out.text << "agreement " << r.agreements << "/" << r.trials.size() << "\n";
  out.check("numeric agreement >= 99%", r.agreement_rate() >= 0.99);
  out.check("map verdict matches sampled compositions", r.verdict_consistent);
}

void run_verify_command(Output& out, const SpaceFile& file, const std::string& path, const MembershipConfig& config) {
  out.inputs["file"] = path;
  const VerifyReport report = run_verify(file, config);
  json checks = json::array();
  double total = 0;
  std::size_t width = 0;
  for (const auto& c : report.checks) width = std::max(width, c.name.size());
  for (const auto& c : report.checks) {
    total += c.seconds;
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"seconds", c.seconds}});
    out.text << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << c.name
             << std::right << std::fixed << std::setprecision(3) << std::setw(9) << c.seconds << "s  " << c.detail
             << "\n";
    out.verdicts.push_back({{"name", c.name}, {"verdict", c.passed ? "PASS" : "FAIL"}});
  }
  const bool ok = report.all_passed();
  out.result = {{"checks", checks}, {"passed", ok}, {"seconds", total}};
  out.text << (ok ? "all checks passed" : "verification FAILED") << " in " << std::fixed << std::setprecision(3) << total
           << "s\n";
  if (!ok) out.exit_code = kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on finite-dimensional diffeological vector spaces"};
  app.require_subcommand(1);
  std::string file_path;
  bool as_json = false;
  app.add_option("-f,--file", file_path, "Space definition file (default: bundled examples)");
  app.add_flag("--json", as_json, "Emit a JSON object instead of text");

  std::string a, b, iso_text, iso2_text, functional_text;
  std::vector<std::string> exprs, samples;
  bool dual_iso = false, trace = false;
  std::size_t trials = 100;
  std::uint64_t seed = 0x5eed;

  auto* dual = app.add_subcommand("dual", "Diffeological dual of a space");
  dual->add_option("space", a)->required();
  auto* hom = app.add_subcommand("hom", "Smooth linear maps V -> W");
  hom->add_option("V", a)->required();
  hom->add_option("W", b)->required();
  auto* bilinear = app.add_subcommand("bilinear", "Smooth bilinear maps V x V -> W and their curried form");
  bilinear->add_option("V", a)->required();
  bilinear->add_option("W", b)->required();
  auto* tensor = app.add_subcommand("tensor", "Tensor product V (x) W");
  tensor->add_option("V", a)->required();
  tensor->add_option("W", b)->required();
  tensor->add_flag("--dual-iso", dual_iso, "Also check V* (x) W* -> (V (x) W)*");
  auto* check_map = app.add_subcommand("check-map", "Smoothness of a named linear map");
  check_map->add_option("map", a)->required();
  auto* check_plot = app.add_subcommand("check-plot", "Plot membership of a curve");
  check_plot->add_option("space", a)->required();
  check_plot->add_option("exprs", exprs, "One expression per coordinate")->required();
  auto* hat = app.add_subcommand("hat-dual", "Full dual with a pushed-forward diffeology");
  hat->add_option("space", a)->required();
  hat->add_option("--iso", iso_text, "Isomorphism V -> V*, rows separated by ';'")->required();
  hat->add_option("--iso2", iso2_text, "Second isomorphism to compare against");
  hat->add_option("--sample", samples, "Sample plot, coordinates separated by ','");
  auto* oracle = app.add_subcommand("oracle", "Numeric smoothness class of an expression at 0");
  oracle->add_option("expr", a)->required();
  oracle->add_flag("--trace", trace, "Print every divided difference");
  auto* cross = app.add_subcommand("cross-validate", "Compare a functional's verdict with sampled compositions");
  cross->add_option("space", a)->required();
  cross->add_option("--functional", functional_text, "Row vector, entries separated by ','")->required();
  cross->add_option("--trials", trials, "Number of sampled plots")->check(CLI::Range(1, 100000));
  cross->add_option("--seed", seed, "Random seed");
  auto* verify = app.add_subcommand("verify", "Run every check and replay the bundled examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  Output out;
  out.command = app.get_subcommands().front()->get_name();
  try {
    const MembershipConfig config = MembershipConfig::from_environment();
    const std::string path = file_path.empty() ? bundled_examples_path() : file_path;
    auto file = [&]() { return load_space_file(path); };

    if (*dual) run_dual(out, file(), a);
    else if (*hom) run_hom(out, file(), a, b);
    else if (*bilinear) run_bilinear(out, file(), a, b);
    else if (*tensor) run_tensor(out, file(), a, b, dual_iso);
    else if (*check_map) run_check_map(out, file(), a, config);
    else if (*check_plot) run_check_plot(out, file(), a, exprs, config);
    else if (*hat) run_hat_dual(out, file(), a, iso_text, iso2_text, samples, config);
    else if (*oracle) run_oracle(out, a, trace);
    else if (*cross) run_cross_validate(out, file(), a, functional_text, trials, seed);
    else if (*verify) run_verify_command(out, file(), path, config);
  } catch (const ParseError& e) {
    std::cerr << "diffeolin: parse error at offset " << e.position() << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "diffeolin: " << e.what() << "\n";
    return kInputError;
  } catch (const UnsupportedError& e) {
    std::cerr << "diffeolin: unsupported: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "diffeolin: internal error: " << e.what() << "\n";
    return kFailed;
  }

  if (as_json) {
    std::cout << json{{"command", out.command}, {"inputs", out.inputs}, {"result", out.result}, {"verdicts", out.verdicts}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << out.text.str();
  }
  return out.exit_code;
}
