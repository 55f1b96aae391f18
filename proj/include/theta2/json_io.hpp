#ifndef THETA2_JSON_IO_HPP
#define THETA2_JSON_IO_HPP

#include "theta2/characteristics.hpp"
#include "theta2/intlinalg.hpp"
#include "theta2/siegel.hpp"
#include "theta2/strata_nerve.hpp"
#include "theta2/surface_group.hpp"
#include "theta2/theta_eval.hpp"
#include "theta2/theta_locus.hpp"

#include <json.hpp>

namespace theta2 {

using json = nlohmann::json;

// Wire conventions: complex numbers as [re, im] pairs, matrices as row-major
// nested arrays, characteristics as {"g", "dp", "dpp"}.

json to_json(cdouble v);
json to_json(const CVector& v);
json to_json(const CMatrix& m);
json to_json(const IntMat& m);
json to_json(const Characteristic& delta);
json to_json(const PeriodMatrix& omega);
json to_json(const SymplecticIntMatrix& m);
json to_json(const TorusPoint& p);
json to_json(const ThetaResult& r);
json to_json(const ThetaJet& jet);
json to_json(const HomologySplitting& s);
json to_json(const GradedRanks& ranks);
json to_json(const Nerve& nerve, bool include_lists);
json to_json(const PointClass& c);
json to_json(const ReducibleReport& r);

cdouble complex_from_json(const json& j);
CVector cvector_from_json(const json& j);
CMatrix cmatrix_from_json(const json& j);
IntMat intmat_from_json(const json& j);
Characteristic characteristic_from_json(const json& j);
PeriodMatrix period_from_json(const json& j);
SymplecticIntMatrix symplectic_from_json(const json& j);

// Parses either inline JSON text or, when prefixed with '@', a file path.
json parse_json_arg(const std::string& arg);

} // namespace theta2

#endif
