#pragma once

// JSON wire formats and curve file writers.  The generator schema is
// bit-exact round-trippable: complex entries are [re, im] pairs, doubles are
// emitted with shortest round-trip formatting, and curve text files carry 17
// significant digits.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "certify.hpp"
#include "dynamics.hpp"
#include "lindblad.hpp"

namespace ncgd {

using nlohmann::json;

inline json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument(field + " must be a [re, im] pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json matrix_to_json(const Matrix& A) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back(complex_to_json(A(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(field + " must be a nonempty array of rows");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw std::invalid_argument(field + " rows must be nonempty arrays");
  Matrix A(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw std::invalid_argument(field + " rows must all have length " +
                                  std::to_string(cols));
    for (size_t c = 0; c < cols; ++c)
      A(r, c) = complex_from_json(j[r][c], field + " entry (" + std::to_string(r) +
                                               "," + std::to_string(c) + ")");
  }
  return A;
}

inline json generator_to_json(const GeneratorSpec& spec) {
  json j;
  j["dimension"] = spec.dim();
  if (!spec.basis.U.isIdentity(0.0))
    j["incoherent_basis"] = matrix_to_json(spec.basis.U);
  if (const auto* hd = std::get_if<HDSpec>(&spec.form)) {
    j["hd"]["H"] = matrix_to_json(hd->H);
    j["hd"]["D"] = matrix_to_json(hd->D);
    if (!hd->F.empty()) {
      json f = json::array();
      for (const Matrix& op : hd->F) f.push_back(matrix_to_json(op));
      j["hd"]["F"] = std::move(f);
    }
  } else if (const auto* js = std::get_if<JumpSpec>(&spec.form)) {
    j["jumps"]["H"] = matrix_to_json(js->H);
    json ops = json::array();
    for (const Matrix& op : js->J) ops.push_back(matrix_to_json(op));
    j["jumps"]["J"] = std::move(ops);
  } else {
    j["qubit_pauli"]["L"] = matrix_to_json(std::get<QubitPauliSpec>(spec.form).L);
  }
  return j;
}

inline GeneratorSpec generator_from_json(const json& j) {
  if (!j.is_object())
    throw std::invalid_argument("generator spec must be a JSON object");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw std::invalid_argument("dimension must be an integer");
  const int d = j["dimension"].get<int>();
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");

  IncoherentBasis basis = IncoherentBasis::computational(d);
  if (j.contains("incoherent_basis")) {
    const Matrix U = matrix_from_json(j["incoherent_basis"], "incoherent_basis");
    if (U.rows() != d || U.cols() != d)
      throw std::invalid_argument("incoherent_basis must be " + std::to_string(d) +
                                  " x " + std::to_string(d));
    try {
      basis = IncoherentBasis::from_unitary(U);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("incoherent_basis: ") + e.what());
    }
  }

  const int forms = static_cast<int>(j.contains("hd")) +
                    static_cast<int>(j.contains("jumps")) +
                    static_cast<int>(j.contains("qubit_pauli"));
  if (forms != 1)
    throw std::invalid_argument("expected exactly one of hd, jumps, qubit_pauli");

  GeneratorSpec spec{HDSpec{}, basis};
  if (j.contains("hd")) {
    const json& h = j["hd"];
    HDSpec hd;
    if (!h.contains("H")) throw std::invalid_argument("hd.H is required");
    if (!h.contains("D")) throw std::invalid_argument("hd.D is required");
    hd.H = matrix_from_json(h["H"], "hd.H");
    hd.D = matrix_from_json(h["D"], "hd.D");
    if (h.contains("F")) {
      if (!h["F"].is_array()) throw std::invalid_argument("hd.F must be an array");
      for (size_t k = 0; k < h["F"].size(); ++k)
        hd.F.push_back(matrix_from_json(h["F"][k], "hd.F[" + std::to_string(k) + "]"));
    }
    spec.form = std::move(hd);
  } else if (j.contains("jumps")) {
    const json& jm = j["jumps"];
    JumpSpec js;
    if (!jm.contains("H")) throw std::invalid_argument("jumps.H is required");
    if (!jm.contains("J") || !jm["J"].is_array())
      throw std::invalid_argument("jumps.J must be an array");
    js.H = matrix_from_json(jm["H"], "jumps.H");
    for (size_t k = 0; k < jm["J"].size(); ++k)
      js.J.push_back(matrix_from_json(jm["J"][k], "jumps.J[" + std::to_string(k) + "]"));
    spec.form = std::move(js);
  } else {
    if (d != 2) throw std::invalid_argument("qubit_pauli requires dimension 2");
    const json& q = j["qubit_pauli"];
    if (!q.contains("L")) throw std::invalid_argument("qubit_pauli.L is required");
    spec.form = QubitPauliSpec{matrix_from_json(q["L"], "qubit_pauli.L")};
  }
  return spec;
}

inline GeneratorSpec parse_generator(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("input is not valid JSON: ") + e.what());
  }
  return generator_from_json(j);
}

inline GeneratorSpec load_generator(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open input file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_generator(buf.str());
}

inline json certificate_to_json(const Certificate& cert) {
  json j;
  j["verdict"] = to_string(cert.verdict);
  j["method"] = to_string(cert.method);
  j["tolerance"] = cert.tolerance;
  j["violations"] = json::array();
  for (const Violation& v : cert.violations) {
    json vj;
    vj["residual"] = v.residual;
    if (v.times.empty())
      vj["j"] = v.order;
    else
      vj["times"] = v.times;
    j["violations"].push_back(std::move(vj));
  }
  return j;
}

inline json qubit_class_to_json(const QubitClass& qc) {
  json j;
  j["non_generating"] = qc.non_generating;
  j["non_activating"] = qc.non_activating;
  j["orthogonal_ncgd"] = qc.orthogonal_ncgd;
  j["overall"] = to_string(qc.overall);
  return j;
}

namespace detail {

inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace detail

inline std::string curve_to_dat(const WitnessCurve& curve) {
  std::string out;
  for (const CurveSample& s : curve.samples)
    out += detail::format_g17(s.t2) + " " + detail::format_g17(s.value) + "\n";
  return out;
}

inline std::string curve_to_csv(const WitnessCurve& curve) {
  std::string out = "t2,value\n";
  for (const CurveSample& s : curve.samples)
    out += detail::format_g17(s.t2) + "," + detail::format_g17(s.value) + "\n";
  return out;
}

inline json curve_to_json(const WitnessCurve& curve) {
  json j;
  j["t3"] = curve.t3;
  j["generator"] = curve.generator;
  j["basis"] = curve.basis;
  j["samples"] = json::array();
  for (const CurveSample& s : curve.samples)
    j["samples"].push_back({{"t2", s.t2}, {"value", s.value}});
  return j;
}

/// Whole-file write; output appears only if every byte was accepted.
inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write output file \"" + path + "\"");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file \"" + path + "\"");
}

}  // namespace ncgd
