#include "cli.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <new>
#include <sstream>

#include <CLI11.hpp>

#include "mpsgs/classifier.hpp"
#include "mpsgs/errors.hpp"
#include "mpsgs/hamiltonian.hpp"
#include "mpsgs/json_io.hpp"
#include "mpsgs/states.hpp"
#include "mpsgs/verifier.hpp"

namespace mpsgs::cli {

namespace {

using json::Json;

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json json_argument(const std::string& arg, const char* what) {
  if (arg.empty()) throw ValidationError(std::string("--") + what + " is required");
  return json::parse(arg.front() == '@' ? read_text(arg.substr(1)) : arg);
}

void require_sites(const JobConfig& c) {
  if (c.n_sites < 1) throw ValidationError("--n-sites is required and must be positive");
}

FamilyParams family_params(const JobConfig& c) {
  return json::params_from_json(family_from_string(c.family), json_argument(c.params, "params"));
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Writes to the --output file when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : target_(&out) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw ValidationError("cannot write '" + path + "'");
      target_ = &file_;
    }
  }
  std::ostream& stream() { return *target_; }
  void finish() {
    target_->flush();
    if (!*target_) throw NumericalError("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* target_;
};

void emit_json(const JobConfig& c, std::ostream& out, const Json& j) {
  Sink sink(c.output, out);
  sink.stream() << json::dump(j, 2) << '\n';
  sink.finish();
}

template <typename T>
void put_le(std::ostream& os, T value) {
  auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  os.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
}

int do_classify(const JobConfig& c, std::ostream& out) {
  const CSpace v = json::cspace_from_json(json::parse(read_text(c.input)), c.rank_tol);
  ClassifierOptions opts;
  opts.rank_tol = c.rank_tol;
  const ClassificationResult r = classify(v, opts);
  emit_json(c, out, json::classification_to_json(r, invariant_signature(v, c.rank_tol)));
  return kExitOk;
}

int do_build_h(const JobConfig& c, std::ostream& out) {
  require_sites(c);
  const FamilyParams p = family_params(c);
  const LocalHamiltonian h = build_family(p);
  const FullHamiltonian full = full_chain(h, c.n_sites);
  if (c.format == "json") {
    Json j;
    j["family"] = c.family;
    j["params"] = json::params_to_json(p);
    j["n_sites"] = c.n_sites;
    j["dim"] = full.matrix().rows();
    j["matrix"] = json::matrix_to_json(full.matrix());
    emit_json(c, out, j);
  } else if (c.format == "binary") {
    Sink sink(c.output, out);
    auto& os = sink.stream();
    os.write("MPSH", 4);
    put_le(os, static_cast<std::uint32_t>(c.n_sites));
    const auto& m = full.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index col = 0; col < m.cols(); ++col) {
        put_le(os, m(r, col).real());
        put_le(os, m(r, col).imag());
      }
    }
    sink.finish();
  } else {
    throw ValidationError("--format must be json or binary");
  }
  return kExitOk;
}

int do_ground_states(const JobConfig& c, std::ostream& out) {
  require_sites(c);
  const FamilyParams p = family_params(c);
  Json list = Json::array();
  for (const auto& s : catalogued_states(p, c.n_sites, {c.odd_from_zero})) {
    list.push_back(Json{{"label", s.label}, {"amplitudes", json::vector_to_json(s.state.amplitudes())}});
  }
  emit_json(c, out, list);
  return kExitOk;
}

int do_mps(const JobConfig& c, std::ostream& out) {
  require_sites(c);
  const MPSSpec spec{json::matrix_from_json(json_argument(c.a0, "a0"), "a0"),
                     json::matrix_from_json(json_argument(c.a1, "a1"), "a1")};
  const Contraction r = mps_contract(spec, c.n_sites);
  Json j;
  j["n_sites"] = c.n_sites;
  j["bond_dim"] = spec.bond_dim();
  j["z"] = r.z;
  j["zero_norm"] = r.zero_norm;
  j["amplitudes"] = json::vector_to_json(r.state().amplitudes());
  j["raw_amplitudes"] = json::vector_to_json(r.raw);
  emit_json(c, out, j);
  return kExitOk;
}

SpectrumOptions spectrum_options(const JobConfig& c) {
  if (!(c.kernel_tol > 0.0)) throw ValidationError("--kernel-tol must be positive");
  if (c.lowest_k < 0) throw ValidationError("--k must be >= 0");
  SpectrumOptions o;
  o.kernel_tol = c.kernel_tol;
  o.k = c.lowest_k;
  return o;
}

int do_verify(const JobConfig& c, std::ostream& out) {
  require_sites(c);
  if (!(c.tol > 0.0)) throw ValidationError("--tol must be positive");
  const FamilyParams p = family_params(c);
  const VerifyReport r = verify_family(p, c.n_sites, c.tol, spectrum_options(c), {c.odd_from_zero});
  Json j;
  j["family"] = c.family;
  j["params"] = json::params_to_json(p);
  j["tol"] = c.tol;
  const Json report = json::verify_to_json(r);
  for (const auto& [key, value] : report.items()) j[key] = value;
  emit_json(c, out, j);
  return r.all_pass() ? kExitOk : kExitClaimFailed;
}

struct Axis {
  std::string name;  // as written, e.g. "g3" or "nu.im"
  std::string key;   // JSON key
  bool imag = false;
  std::vector<double> values;
};

Axis parse_axis(const std::string& text, const FamilyUsage& use) {
  const auto fail = [&](const std::string& why) -> Axis {
    throw ValidationError("--grid '" + text + "': " + why + " (expected name:lo..hi:count)");
  };
  const auto c1 = text.find(':');
  const auto c2 = text.rfind(':');
  const auto dots = text.find("..", c1 == std::string::npos ? 0 : c1);
  if (c1 == std::string::npos || c2 == c1 || dots == std::string::npos || dots > c2) return fail("malformed axis");

  Axis a;
  a.name = text.substr(0, c1);
  a.key = a.name;
  if (const auto dot = a.name.find('.'); dot != std::string::npos) {
    const std::string part = a.name.substr(dot + 1);
    if (part != "re" && part != "im") return fail("suffix must be .re or .im");
    a.key = a.name.substr(0, dot);
    a.imag = part == "im";
  }
  const bool real_key = (a.key == "g" && use.g) || ((a.key == "g1" || a.key == "g2") && use.g123);
  const bool complex_key = (a.key == "g3" && use.g123) || ((a.key == "nu" || a.key == "nu_prime") && use.nu);
  if (!real_key && !complex_key) return fail("'" + a.key + "' is not a sweepable parameter of this family");
  if (real_key && a.name != a.key) return fail("real parameter takes no .re/.im suffix");

  double lo = 0.0, hi = 0.0;
  long count = 0;
  try {
    std::size_t used = 0;
    const std::string los = text.substr(c1 + 1, dots - c1 - 1);
    lo = std::stod(los, &used);
    if (used != los.size()) return fail("bad lower bound");
    const std::string his = text.substr(dots + 2, c2 - dots - 2);
    hi = std::stod(his, &used);
    if (used != his.size()) return fail("bad upper bound");
    const std::string cs = text.substr(c2 + 1);
    count = std::stol(cs, &used);
    if (used != cs.size()) return fail("bad count");
  } catch (const std::logic_error&) {
    return fail("bad number");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) return fail("bounds must be finite");
  if (count < 1 || count > 100000) return fail("count must be in [1, 100000]");
  for (long i = 0; i < count; ++i) {
    a.values.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return a;
}

int do_sweep(const JobConfig& c, std::ostream& out) {
  require_sites(c);
  if (c.grid.empty()) throw ValidationError("--grid is required");
  const Family family = family_from_string(c.family);
  const FamilyUsage use = family_usage(family);
  const Json base = c.params.empty() ? Json::object() : json_argument(c.params, "params");
  if (!base.is_object()) throw ValidationError("params: expected a JSON object");

  std::vector<Axis> axes;
  for (const auto& g : c.grid) {
    axes.push_back(parse_axis(g, use));
    for (std::size_t i = 0; i + 1 < axes.size(); ++i) {
      if (axes[i].name == axes.back().name) throw ValidationError("--grid axis '" + axes.back().name + "' repeated");
    }
  }

  // Row-major over axes, first axis outermost; every point is validated
  // before any diagonalization runs.
  std::vector<std::vector<double>> points{{}};
  for (const auto& a : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& pt : points) {
      for (double v : a.values) {
        next.push_back(pt);
        next.back().push_back(v);
      }
    }
    points = std::move(next);
  }
  std::vector<FamilyParams> params;
  for (const auto& pt : points) {
    Json j = base;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const Axis& a = axes[i];
      const bool complex_key = a.key == "g3" || a.key == "nu" || a.key == "nu_prime";
      if (!complex_key) {
        j[a.key] = pt[i];
        continue;
      }
      if (!j.contains(a.key)) j[a.key] = Json::array({0.0, 0.0});
      if (!j[a.key].is_array() || j[a.key].size() != 2) throw ValidationError("params: '" + a.key + "' must be [re, im]");
      j[a.key][a.imag ? 1 : 0] = pt[i];
    }
    params.push_back(json::params_from_json(family, j));
  }

  const SpectrumOptions opts = spectrum_options(c);
  Sink sink(c.output, out);
  auto& os = sink.stream();
  for (const auto& a : axes) os << a.name << ',';
  os << "ground_energy,kernel_dim,max_residual,all_pass\n";
  for (std::size_t row = 0; row < points.size(); ++row) {
    const VerifyReport r = verify_family(params[row], c.n_sites, c.tol, opts, {c.odd_from_zero});
    double worst = 0.0;
    for (const auto& [label, res] : r.spectrum.residuals) worst = std::max(worst, res);
    for (double v : points[row]) os << format_number(v) << ',';
    os << format_number(r.spectrum.ground_energy) << ',' << r.spectrum.kernel_dim << ','
       << (r.spectrum.residuals.empty() ? std::string("nan") : format_number(worst)) << ','
       << (r.all_pass() ? "true" : "false") << '\n';
  }
  sink.finish();
  return kExitOk;
}

}  // namespace

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Classify: return do_classify(config, out);
      case Command::BuildH: return do_build_h(config, out);
      case Command::GroundStates: return do_ground_states(config, out);
      case Command::Mps: return do_mps(config, out);
      case Command::Verify: return do_verify(config, out);
      case Command::Sweep: return do_sweep(config, out);
    }
    err << "error: unknown command\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::bad_alloc&) {
    err << "numerical error: out of memory\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify two-site constraint spaces, build chain Hamiltonians and verify their matrix product "
               "ground states. MPS_MAX_SITES overrides the Hamiltonian size guard (default 14)."};
  app.require_subcommand(1);
  JobConfig c;

  const auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", c.family, "F105, F107, F108, F109, F111, F112, F116, F117 or F59")->required();
    sub->add_option("--n-sites", c.n_sites, "Chain length N")->required();
  };
  const auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", c.output, "Output path (default stdout)"); };
  const auto add_spectrum = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "Residual tolerance for catalogued states")->capture_default_str();
    sub->add_option("--kernel-tol", c.kernel_tol, "Kernel threshold relative to the spectral scale")
        ->capture_default_str();
    sub->add_option("--k", c.lowest_k, "Number of lowest eigenvalues to report")->capture_default_str();
    sub->add_flag("--odd-from-zero", c.odd_from_zero, "Include single-zero strings in the odd-parity F112 state");
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify a constraint space read as CSpace JSON");
  classify_cmd->add_option("input", c.input, "CSpace JSON file, - for stdin")->capture_default_str();
  classify_cmd->add_option("--rank-tol", c.rank_tol, "Relative rank tolerance")->capture_default_str();
  add_output(classify_cmd);

  auto* build_cmd = app.add_subcommand("build-h", "Dense open-chain Hamiltonian of a family");
  add_family(build_cmd);
  build_cmd->add_option("--params", c.params, "Parameter JSON, or @file")->required();
  build_cmd->add_option("--format", c.format, "json or binary")->capture_default_str();
  add_output(build_cmd);

  auto* gs_cmd = app.add_subcommand("ground-states", "Catalogued ground states of a family");
  add_family(gs_cmd);
  gs_cmd->add_option("--params", c.params, "Parameter JSON, or @file")->required();
  gs_cmd->add_flag("--odd-from-zero", c.odd_from_zero, "Include single-zero strings in the odd-parity F112 state");
  add_output(gs_cmd);

  auto* mps_cmd = app.add_subcommand("mps", "Contract a matrix product state");
  mps_cmd->add_option("--a0", c.a0, "A0 as a JSON matrix of [re, im], or @file")->required();
  mps_cmd->add_option("--a1", c.a1, "A1 as a JSON matrix of [re, im], or @file")->required();
  mps_cmd->add_option("--n-sites", c.n_sites, "Chain length N")->required();
  add_output(mps_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Diagonalize and check the catalogued ground states");
  add_family(verify_cmd);
  verify_cmd->add_option("--params", c.params, "Parameter JSON, or @file")->required();
  add_spectrum(verify_cmd);
  add_output(verify_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Verify over a parameter grid, CSV output");
  add_family(sweep_cmd);
  sweep_cmd->add_option("--params", c.params, "Base parameter JSON for the non-swept parameters, or @file");
  sweep_cmd->add_option("--grid", c.grid, "Axis name:lo..hi:count, repeatable")->required();
  add_spectrum(sweep_cmd);
  add_output(sweep_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  }

  if (classify_cmd->parsed()) c.command = Command::Classify;
  if (build_cmd->parsed()) c.command = Command::BuildH;
  if (gs_cmd->parsed()) c.command = Command::GroundStates;
  if (mps_cmd->parsed()) c.command = Command::Mps;
  if (verify_cmd->parsed()) c.command = Command::Verify;
  if (sweep_cmd->parsed()) c.command = Command::Sweep;
  return run(c, out, err);
}

}  // namespace mpsgs::cli
