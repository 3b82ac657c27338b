#include "mpsgs/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "mpsgs/errors.hpp"

namespace mpsgs::json {

namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out.push_back('\n');
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out.push_back(',');
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write(value, indent, depth + 1, out);
      }
      newline(depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars or of scalar-only arrays (a vector of complex
      // pairs, a matrix row) stay on one line.
      const auto scalar_only = [](const Json& a) {
        return std::none_of(a.begin(), a.end(), [](const Json& e) { return e.is_structured(); });
      };
      const bool flat = std::all_of(j.begin(), j.end(), [&](const Json& e) {
        return e.is_primitive() || (e.is_array() && scalar_only(e));
      });
      out.push_back('[');
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

void require_array(const Json& j, std::size_t n, std::string_view what) {
  if (!j.is_array() || (n && j.size() != n)) {
    throw ValidationError(std::string(what) + ": expected an array" + (n ? " of length " + std::to_string(n) : ""));
  }
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

double real_from_json(const Json& j, std::string_view what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + ": expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": not finite");
  return x;
}

Complex complex_from_json(const Json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 2) throw ValidationError(std::string(what) + ": expected [re, im]");
  return {real_from_json(j[0], what), real_from_json(j[1], what)};
}

Json quartet_to_json(const PauliQuartet& q) {
  return Json{{"v0", complex_to_json(q.v0)},
              {"v1", complex_to_json(q.v1)},
              {"v2", complex_to_json(q.v2)},
              {"u", complex_to_json(q.u)}};
}

PauliQuartet quartet_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("quartet: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "v0" && key != "v1" && key != "v2" && key != "u") {
      throw ValidationError("quartet: unknown key '" + key + "'");
    }
  }
  const auto field = [&](const char* k) {
    if (!j.contains(k)) throw ValidationError(std::string("quartet: missing '") + k + "'");
    return complex_from_json(j.at(k), std::string("quartet.") + k);
  };
  return {field("v0"), field("v1"), field("v2"), field("u")};
}

Json cspace_to_json(const CSpace& v) {
  Json basis = Json::array();
  for (const auto& q : v.basis()) basis.push_back(quartet_to_json(q));
  return Json{{"basis", basis}};
}

CSpace cspace_from_json(const Json& j, double rank_tol) {
  if (!j.is_object() || !j.contains("basis")) throw ValidationError("CSpace: expected {\"basis\": [...]}");
  require_array(j.at("basis"), 0, "CSpace.basis");
  std::vector<PauliQuartet> basis;
  for (const auto& e : j.at("basis")) basis.push_back(quartet_from_json(e));
  return CSpace(basis, rank_tol);
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_from_json(const Json& j, std::string_view what) {
  require_array(j, 0, what);
  if (j.empty()) throw ValidationError(std::string(what) + ": empty matrix");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ValidationError(std::string(what) + ": rows must be non-empty arrays");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    require_array(j[r], cols, what);
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(j[r][c], what);
    }
  }
  return m;
}

Json vector_to_json(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

FamilyParams params_from_json(Family family, const Json& j) {
  if (!j.is_object()) throw ValidationError("params: expected a JSON object");
  const FamilyUsage use = family_usage(family);
  std::set<std::string> allowed;
  if (use.g) allowed.insert("g");
  if (use.g123) allowed.insert({"g1", "g2", "g3"});
  if (use.nu) allowed.insert({"nu", "nu_prime"});
  if (use.lambda3) allowed.insert("lambda3");

  const std::string fam(to_string(family));
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ValidationError("params: '" + key + "' is not a parameter of " + fam);
  }
  for (const auto& key : allowed) {
    if (!j.contains(key)) throw ValidationError("params: " + fam + " requires '" + key + "'");
  }

  FamilyParams p;
  p.family = family;
  if (use.g) p.g = real_from_json(j.at("g"), "g");
  if (use.g123) {
    p.g1 = real_from_json(j.at("g1"), "g1");
    p.g2 = real_from_json(j.at("g2"), "g2");
    p.g3 = complex_from_json(j.at("g3"), "g3");
  }
  if (use.nu) {
    p.nu = complex_from_json(j.at("nu"), "nu");
    p.nu_prime = complex_from_json(j.at("nu_prime"), "nu_prime");
  }
  if (use.lambda3) {
    const Eigen::MatrixXcd l = matrix_from_json(j.at("lambda3"), "lambda3");
    if (l.rows() != 3 || l.cols() != 3) throw ValidationError("params: lambda3 must be 3x3");
    p.lambda3 = Eigen::Matrix3cd(l);
  }
  p.validate();
  return p;
}

Json params_to_json(const FamilyParams& p) {
  const FamilyUsage use = family_usage(p.family);
  Json j = Json::object();
  if (use.g) j["g"] = p.g;
  if (use.g123) {
    j["g1"] = p.g1;
    j["g2"] = p.g2;
    j["g3"] = complex_to_json(p.g3);
  }
  if (use.nu) {
    j["nu"] = complex_to_json(p.nu);
    j["nu_prime"] = complex_to_json(p.nu_prime);
  }
  if (use.lambda3 && p.lambda3) j["lambda3"] = matrix_to_json(*p.lambda3);
  return j;
}

Json signature_to_json(const InvariantSignature& s) {
  return Json{{"dim", s.dim},
              {"dim_vplus", s.dim_vplus},
              {"gram_rank", s.gram_rank},
              {"gram_nullity", s.gram_nullity},
              {"sigma_in_v", s.sigma_in_v},
              {"structure", std::string(to_string(s.structure()))}};
}

Json classification_to_json(const ClassificationResult& r, const InvariantSignature& s) {
  Json j;
  j["case_id"] = std::string(to_string(r.form.case_id()));
  j["mu"] = r.form.mu() ? complex_to_json(*r.form.mu()) : Json(nullptr);
  j["gamma"] = matrix_to_json(r.gamma.matrix());
  Json basis = Json::array();
  const CSpace canonical = canonical_space(r.form);
  for (const auto& q : canonical.basis()) basis.push_back(quartet_to_json(q));
  j["canonical_basis"] = basis;
  j["signature"] = signature_to_json(s);
  return j;
}

Json spectrum_to_json(const SpectrumReport& r) {
  Json j;
  j["n_sites"] = r.n_sites;
  j["ground_energy"] = r.ground_energy;
  j["kernel_dim"] = r.kernel_dim;
  j["lowest_k_eigenvalues"] = r.lowest;
  Json res = Json::object();
  for (const auto& [label, value] : r.residuals) res[label] = value;
  j["residuals"] = res;
  j["warning"] = r.warning ? Json(*r.warning) : Json(nullptr);
  return j;
}

Json verify_to_json(const VerifyReport& r) {
  Json j = spectrum_to_json(r.spectrum);
  Json claims = Json::array();
  for (const auto& c : r.claims) {
    claims.push_back(Json{{"label", c.label},
                          {"residual", c.residual ? Json(*c.residual) : Json(nullptr)},
                          {"zero_vector", !c.residual.has_value()},
                          {"pass", c.pass}});
  }
  j["claims"] = claims;
  j["independent_states"] = r.independent_states;
  j["kernel_covers_states"] = r.kernel_covers_states();
  j["all_pass"] = r.all_pass();
  return j;
}

}  // namespace mpsgs::json
