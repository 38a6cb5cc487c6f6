#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fracseq/coefficients.hpp"
#include "fracseq/compactness.hpp"
#include "fracseq/matrix_domain.hpp"
#include "fracseq/matrix_source.hpp"
#include "fracseq/sequence.hpp"
#include "fracseq/transforms.hpp"

namespace fracseq {

using Json = nlohmann::ordered_json;

// Deterministic rendering: fields in insertion order, two-space indent,
// floating values with 17 significant digits.
std::string dump(const Json& value);

Json to_json(const CoefficientTable& table);
Json to_json(const FiniteSequence& sequence);
Json to_json(const NormResult& norm);
Json to_json(const MatrixSource& source);
Json to_json(const HatMatrixWindow& window);
Json to_json(const SubsetSupremum& supremum);
Json to_json(const CompactnessReport& report);

// {"entries": [numbers]}. Throws InvalidArgument naming the offending field.
FiniteSequence sequence_from_json(const Json& json);
// One number per line; blank lines and '#' comments are skipped.
FiniteSequence sequence_from_csv(std::string_view text);
std::string to_csv(const FiniteSequence& sequence);

// {"kind": "dense-window" | "banded" | "generator", ...}.
MatrixSource matrix_from_json(const Json& json);

}  // namespace fracseq
