#pragma once

// JSON forms of symbols, conjugation specs and reports.

#include "conjtoep/composition_scan.hpp"
#include "conjtoep/finite.hpp"
#include "conjtoep/polydisc.hpp"

#include "json.hpp"

namespace conjtoep {

using nlohmann::json;

/// Input that is not valid JSON or does not follow the expected schema.
class JsonError : public Error {
 public:
  using Error::Error;
};

/// Parses `text`, or the contents of the file when text is "@path".
json parse_json_argument(const std::string& text);

json complex_to_json(cplx z);
/// [re, im] or a plain number.
cplx complex_from_json(const json& j);

json matrix_to_json(const ComplexMatrix& m);  // rows of [re, im]
ComplexMatrix matrix_from_json(const json& j);

json symbol_to_json(const LaurentSymbol& phi);
LaurentSymbol symbol_from_json(const json& j);

json family_to_json(const FamilySpec& spec);
FamilySpec family_from_json(const json& j);

json poly_symbol_to_json(const PolySymbol& phi);
PolySymbol poly_symbol_from_json(const json& j);

struct PolyConjugationSpec {
  std::vector<double> theta;
  std::vector<double> xi;
};
json poly_conjugation_to_json(const PolyConjugationSpec& s);
PolyConjugationSpec poly_conjugation_from_json(const json& j);

json finite_toeplitz_to_json(const FiniteToeplitz& t);
FiniteToeplitz finite_toeplitz_from_json(const json& j);

/// {"family": "toeplitz"}, {"family": "canonical_j"} or
/// {"family": "matrix", "coeff": rows}; n + 1 is the matrix size.
Conjugation finite_conjugation_from_json(const json& j, std::size_t n);

json report_to_json(const SymmetryReport& r);
SymmetryReport report_from_json(const json& j);

json scan_to_json(const ScanReport& r);

}  // namespace conjtoep
