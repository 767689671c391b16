#pragma once

// JSON encodings of scalars, sequences, operator specs and matrices.
//
// Exact rationals are strings ("1/3", "-2"); floats are JSON numbers.

#include <json.hpp>

#include "diagonalis/matrix.hpp"
#include "diagonalis/scalar.hpp"
#include "diagonalis/seqspec.hpp"
#include "diagonalis/spectra.hpp"

namespace diagonalis::io {

using json = nlohmann::json;

json to_json(const Real& x);
/// Real values encode as a bare Real; otherwise {"re": .., "im": ..}.
json to_json(const Complex& z);
json to_json(const seq::ExtendedSum& s);
json to_json(const seq::Count& c);
json to_json(const std::vector<Real>& v);
json to_json(const std::vector<Complex>& v);
json to_json(const Matrix& m);
json to_json(const seq::Stream& s);
json to_json(const seq::SequenceSpec& s);
json to_json(const spectra::OperatorSpec& s);
json to_json(const spectra::SpectralSummary& s);

/// With exact == false every number is read as a double.
Real real_from_json(const json& j, bool exact);
Complex complex_from_json(const json& j, bool exact);
seq::Count count_from_json(const json& j);
std::vector<Real> reals_from_json(const json& j, bool exact);
std::vector<Complex> complexes_from_json(const json& j, bool exact);
Matrix matrix_from_json(const json& j);
seq::Stream stream_from_json(const json& j, bool exact);
/// Accepts a bare list (finite sequence) or {"field": .., "streams": [..]}.
seq::SequenceSpec spec_from_json(const json& j, bool exact);
seq::OrderedSequenceSpec ordered_from_json(const json& j, bool exact);
spectra::OperatorSpec operator_from_json(const json& j, bool exact);

}  // namespace diagonalis::io
