#include "theta2/json_io.hpp"

#include "theta2/errors.hpp"

#include <fstream>
#include <sstream>

namespace theta2 {

json to_json(cdouble v) { return json::array({v.real(), v.imag()}); }

json to_json(const CVector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const IntMat& m) {
  json out = json::array();
  for (int i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const Characteristic& delta) {
  return json{{"g", delta.genus()},
              {"dp", delta.delta_prime()},
              {"dpp", delta.delta_dprime()}};
}

json to_json(const PeriodMatrix& omega) { return to_json(omega.mat()); }

json to_json(const SymplecticIntMatrix& m) {
  return json{{"A", to_json(m.a())}, {"B", to_json(m.b())}, {"C", to_json(m.c())},
              {"D", to_json(m.d())}};
}

json to_json(const TorusPoint& p) {
  json m1 = json::array(), m2 = json::array();
  for (int i = 0; i < p.m1.size(); ++i) m1.push_back(p.m1[i]);
  for (int i = 0; i < p.m2.size(); ++i) m2.push_back(p.m2[i]);
  return json{{"z", to_json(p.z)}, {"m1", std::move(m1)}, {"m2", std::move(m2)}};
}

json to_json(const ThetaResult& r) {
  return json{{"value", to_json(r.value)},
              {"truncation_bound", r.truncation_bound},
              {"radius_used", r.radius_used}};
}

json to_json(const ThetaJet& jet) {
  return json{{"value", to_json(jet.value)},
              {"grad_z", to_json(jet.grad_z)},
              {"hess_z", to_json(jet.hess_z)},
              {"truncation_bound", jet.truncation_bound},
              {"radius_used", jet.radius_used}};
}

json to_json(const HomologySplitting& s) {
  return json{{"v_plus", to_json(s.v_plus)}, {"v_minus", to_json(s.v_minus)}};
}

json to_json(const GradedRanks& ranks) {
  json out = json::object();
  for (const auto& [degree, rank] : ranks) out[std::to_string(degree)] = rank;
  return out;
}

json to_json(const Nerve& nerve, bool include_lists) {
  json out{{"n_beta", nerve.n_beta},
           {"radius", nerve.radius},
           {"component_count", nerve.components.size()},
           {"pair_count", nerve.pairs.size()}};
  if (include_lists) {
    json comps = json::array();
    for (const ComponentId& c : nerve.components)
      comps.push_back(json{{"beta", c.beta}, {"kind", c.kind}, {"m", c.m}, {"n", c.n}});
    json pairs = json::array();
    for (const auto& [i, j] : nerve.pairs) pairs.push_back(json::array({i, j}));
    out["components"] = std::move(comps);
    out["pairs"] = std::move(pairs);
  }
  return out;
}

json to_json(const PointClass& c) {
  return json{{"kind", c.kind == PointKind::Smooth ? "Smooth" : "Node"},
              {"grad_norm", c.grad_norm},
              {"hess_det", to_json(c.hess_det)},
              {"full_grad_norm", c.full_grad_norm}};
}

json to_json(const ReducibleReport& r) {
  return json{{"branch_residual", r.branch_residual},
              {"node_count", r.node_count},
              {"node_order", r.node_order},
              {"node", to_json(r.node)},
              {"branch_zero1", to_json(r.branch_zero1)},
              {"branch_zero2", to_json(r.branch_zero2)}};
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error("bad-input", what); }

double number_from(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string("expected a number for ") + what);
  return j.get<double>();
}

} // namespace

cdouble complex_from_json(const json& j) {
  if (j.is_number()) return cdouble(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2) bad("complex values are [re, im] pairs");
  return cdouble(number_from(j[0], "re"), number_from(j[1], "im"));
}

CVector cvector_from_json(const json& j) {
  if (!j.is_array()) bad("expected an array of complex values");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = complex_from_json(j[i]);
  return v;
}

CMatrix cmatrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nested array matrix");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) bad("expected a nested array matrix");
  CMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<int>(i), static_cast<int>(k)) = complex_from_json(j[i][k]);
  }
  return m;
}

IntMat intmat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) bad("expected a nested array of integers");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) bad("expected a nested array of integers");
  IntMat m(static_cast<int>(j.size()), static_cast<int>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) bad("ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number_integer()) bad("matrix entries must be integers");
      m(static_cast<int>(i), static_cast<int>(k)) = j[i][k].get<long long>();
    }
  }
  return m;
}

Characteristic characteristic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dp") || !j.contains("dpp"))
    bad("characteristic objects need \"dp\" and \"dpp\" bit arrays");
  auto bits = [](const json& arr) {
    if (!arr.is_array()) bad("characteristic bit lists must be arrays");
    std::vector<std::uint8_t> out;
    for (const auto& b : arr) {
      if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
        bad("characteristic entries must be bits");
      out.push_back(static_cast<std::uint8_t>(b.get<int>()));
    }
    return out;
  };
  Characteristic delta(bits(j["dp"]), bits(j["dpp"]));
  if (j.contains("g") && j["g"].get<int>() != delta.genus())
    bad("characteristic \"g\" disagrees with bit vector length");
  return delta;
}

PeriodMatrix period_from_json(const json& j) { return PeriodMatrix(cmatrix_from_json(j)); }

SymplecticIntMatrix symplectic_from_json(const json& j) {
  if (!j.is_object()) bad("symplectic matrices are objects with blocks A,B,C,D");
  for (const char* key : {"A", "B", "C", "D"})
    if (!j.contains(key)) bad("symplectic matrices are objects with blocks A,B,C,D");
  return SymplecticIntMatrix(intmat_from_json(j["A"]), intmat_from_json(j["B"]),
                             intmat_from_json(j["C"]), intmat_from_json(j["D"]));
}

json parse_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) bad("cannot open file " + arg.substr(1));
    std::ostringstream buf;
    buf << in.rdbuf();
    return json::parse(buf.str());
  }
  return json::parse(arg);
}

} // namespace theta2
