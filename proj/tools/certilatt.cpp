// certilatt: certified lattice reduction from the command line.
//
//   certilatt reduce [options] [input.json]
//   certilatt verify [options] [input.json]
//   certilatt ideal-reduce [options] [field.json]
//
// Exit codes: 0 success, 1 not reduced, 2 not positive definite,
// 3 oracle failure or accuracy exhausted, 4 undecidable, 64 usage,
// 65 malformed input.

#include <certilatt/adaptive.hpp>
#include <certilatt/errors.hpp>
#include <certilatt/io.hpp>
#include <certilatt/numberfield.hpp>
#include <certilatt/reference.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace certilatt;
using nlohmann::json;

constexpr int kExitNotReduced = 1;
constexpr int kExitNonPosDef = 2;
constexpr int kExitOracle = 3;
constexpr int kExitUndecidable = 4;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

struct Config {
  std::string input = "-";
  std::string output;
  std::string delta = "0.99";
  std::string eta = "0.51";
  long precision0 = 24;
  long accuracy0 = 32;
  std::string growth = "1.5";
  bool stats = false;
  bool json = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

AdaptiveParams params_from(const Config& c) {
  AdaptiveParams p;
  try {
    p.delta = parse_rational(c.delta);
    p.eta = parse_rational(c.eta);
    p.growth = parse_rational(c.growth);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (c.precision0 < 4) throw UsageError("--precision0 must be at least 4");
  if (c.accuracy0 < 1) throw UsageError("--accuracy0 must be at least 1");
  p.ell0 = c.precision0;
  p.n0 = static_cast<unsigned>(c.accuracy0);
  p.max_escalations = max_escalations_from_env(p.max_escalations);
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return p;
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw UsageError("cannot write " + c.output);
  out << text;
}

std::string text_rows(const IntMatrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
    os << '\n';
  }
  return os.str();
}

json stats_json(const ReductionOutcome& r) {
  json s;
  s["rounds"] = r.stats.rounds;
  s["swaps"] = r.stats.swaps;
  s["removed"] = r.stats.removed;
  s["final_precision"] = r.stats.final_precision;
  s["final_accuracy"] = r.stats.final_accuracy ? json(*r.stats.final_accuracy) : json(nullptr);
  s["attempts"] = r.attempts.size();
  return s;
}

std::string stats_text(const ReductionOutcome& r) {
  std::ostringstream os;
  os << "# rounds " << r.stats.rounds << "\n# swaps " << r.stats.swaps << "\n# removed " << r.stats.removed
     << "\n# final_precision " << r.stats.final_precision << "\n# final_accuracy "
     << (r.stats.final_accuracy ? std::to_string(*r.stats.final_accuracy) : "exact") << "\n# attempts "
     << r.attempts.size() << '\n';
  return os.str();
}

int failure_exit(const ReductionOutcome& r) {
  std::cerr << "certilatt: " << to_string(r.status);
  if (r.failure_index) std::cerr << " at vector " << (*r.failure_index + 1);
  if (!r.message.empty()) std::cerr << ": " << r.message;
  std::cerr << '\n';
  return r.status == ReductionStatus::ErrorNonPosDefinite ? kExitNonPosDef : kExitOracle;
}

int cmd_reduce(const Config& c) {
  const AdaptiveParams p = params_from(c);
  const LatticeFile f = read_lattice_file(c.input);
  AdaptiveSource source;
  if (const auto* g = std::get_if<GramExact>(&f.input.gram)) {
    source = *g;
  } else if (const auto* g = std::get_if<GramApprox>(&f.input.gram)) {
    source = std::make_shared<FixedGramOracle>(*g);
  } else {
    source = std::get<std::shared_ptr<GramOracle>>(f.input.gram);
  }
  AdaptiveParams run = p;
  // A stored approximation can only be used at its own accuracy.
  if (const auto* g = std::get_if<GramApprox>(&f.input.gram)) run.n0 = std::max(1u, g->accuracy);
  const ReductionOutcome r = adaptive_lll(source, f.input.vectors, run);
  if (!r.ok()) return failure_exit(r);
  if (c.json) {
    json out = lattice_to_json(f, r.basis);
    if (c.stats) out["stats"] = stats_json(r);
    emit(c, out.dump(2) + "\n");
  } else {
    emit(c, text_rows(r.basis) + (c.stats ? stats_text(r) : ""));
  }
  return 0;
}

GramExact integral_scaling(const RatMatrix& m) {
  mpz_class den = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const mpq_class& q : m.row(i)) den = lcm(den, q.get_den());
  IntMatrix g(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class s = m(i, j) * den;
      g(i, j) = s.get_num();
    }
  return GramExact::from(std::move(g));
}

int cmd_verify(const Config& c) {
  const AdaptiveParams p = params_from(c);
  const LatticeFile f = read_lattice_file(c.input);
  VerifyResult v;
  if (const auto* g = std::get_if<GramExact>(&f.input.gram)) {
    v = verify_reduced(*g, f.input.vectors, p.delta, p.eta);
  } else if (const auto* g = std::get_if<GramApprox>(&f.input.gram)) {
    v = verify_reduced(*g, f.input.vectors, p.delta, p.eta);
  } else {
    // Both conditions are invariant under scaling the form.
    const auto oracle = std::dynamic_pointer_cast<RationalGramOracle>(std::get<std::shared_ptr<GramOracle>>(f.input.gram));
    v = verify_reduced(integral_scaling(oracle->exact()), f.input.vectors, p.delta, p.eta);
  }
  std::ostringstream os;
  if (c.json) {
    json out;
    out["verdict"] = to_string(v.verdict);
    if (v.witness) {
      out["witness"] = {{"kind", to_string(v.witness->kind)},
                        {"i", v.witness->i + 1},
                        {"j", v.witness->j + 1},
                        {"detail", v.witness->detail}};
    }
    os << out.dump(2) << '\n';
  } else {
    os << to_string(v.verdict);
    if (v.witness) {
      os << ": " << to_string(v.witness->kind) << " condition at (" << v.witness->i + 1 << ", " << v.witness->j + 1
         << "), " << v.witness->detail;
    }
    os << '\n';
  }
  emit(c, os.str());
  switch (v.verdict) {
    case Verdict::Reduced: return 0;
    case Verdict::NotReduced: return kExitNotReduced;
    case Verdict::Undecidable: return kExitUndecidable;
  }
  return kExitNotReduced;
}

int cmd_ideal_reduce(const Config& c) {
  const AdaptiveParams p = params_from(c);
  FieldFile f = read_field_file(c.input);
  if (!f.ideal) throw ParseError("field file has no \"ideal\"");
  auto k = std::make_shared<NumberField>(f.poly);
  IdealReduction red;
  try {
    red = reduce_ideal(k, f.basis, *f.ideal, p);
  } catch (const NotIntegralCoordinates& e) {
    throw ParseError(e.what());
  }
  const ReductionOutcome& r = red.outcome;
  if (!r.ok()) return failure_exit(r);
  if (c.json) {
    json out;
    out["poly"] = json::array();
    for (const mpz_class& x : f.poly.coeffs()) out["poly"].push_back(to_json(x));
    out["vectors"] = to_json(r.basis);
    out["accuracy"] = *r.stats.final_accuracy;
    out["gram"] = to_json(red.gram->centers);
    if (c.stats) out["stats"] = stats_json(r);
    emit(c, out.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << text_rows(r.basis) << "# accuracy " << *r.stats.final_accuracy << '\n';
    for (std::size_t i = 0; i < red.gram->dim(); ++i) {
      os << "# gram";
      for (const mpz_class& x : red.gram->centers.row(i)) os << ' ' << x.get_str();
      os << '\n';
    }
    if (c.stats) os << stats_text(r);
    emit(c, os.str());
  }
  return 0;
}

void add_common(CLI::App* cmd, Config& c) {
  cmd->add_option("input", c.input, "Input JSON file, or - for stdin");
  cmd->add_option("--delta", c.delta, "Lovasz parameter delta");
  cmd->add_option("--eta", c.eta, "Size-reduction parameter eta");
  cmd->add_option("--output,-o", c.output, "Write the result here instead of stdout");
  cmd->add_flag("--json", c.json, "JSON output");
}

void add_adaptive(CLI::App* cmd, Config& c) {
  cmd->add_option("--precision0", c.precision0, "Initial working precision in bits");
  cmd->add_option("--accuracy0", c.accuracy0, "Initial Gram accuracy");
  cmd->add_option("--growth", c.growth, "Geometric growth factor");
  cmd->add_flag("--stats", c.stats, "Report reduction statistics");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified lattice reduction"};
  app.require_subcommand(1);
  Config config;
  CLI::App* reduce = app.add_subcommand("reduce", "Reduce a lattice file");
  CLI::App* verify = app.add_subcommand("verify", "Check that a lattice file is (delta, eta)-reduced");
  CLI::App* ideal = app.add_subcommand("ideal-reduce", "Reduce an ideal of a number field");
  for (CLI::App* cmd : {reduce, verify, ideal}) add_common(cmd, config);
  add_adaptive(reduce, config);
  add_adaptive(ideal, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (reduce->parsed()) return cmd_reduce(config);
    if (verify->parsed()) return cmd_verify(config);
    return cmd_ideal_reduce(config);
  } catch (const UsageError& e) {
    std::cerr << "certilatt: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "certilatt: " << e.what() << '\n';
    return kExitParse;
  } catch (const OracleError& e) {
    std::cerr << "certilatt: " << e.what() << '\n';
    return kExitOracle;
  }
}
