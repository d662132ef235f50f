#pragma once

#include "blockspec/dixmier.hpp"
#include "blockspec/generators.hpp"
#include "blockspec/schatten.hpp"
#include "blockspec/symbol.hpp"
#include "blockspec/tensor.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace blockspec {

using Json = nlohmann::json;

/// Loads a symbol document. Two forms are accepted:
///   {"dims": [...], "blocks": [[[re,im], ...], ...], "multiplicity": [...]}
/// for an explicit finite symbol (each block a row-major list of [re, im]
/// entries; multiplicity optional), or
///   {"generator": "<name>", "params": {...}}
/// for the built-in generators su2-laplacian (params: alpha),
/// so3-schrodinger (params: gamma) and torus-multiplier (params: family or
/// table, n, radius, and s for the inv-power family).
MatrixSymbol load_symbol(const Json& doc);

/// Serializes an explicit finite symbol back to the document form above.
/// Load followed by save is bit-faithful for explicit symbols. Throws for
/// generator-backed symbols, which have no stored blocks.
Json save_symbol(const MatrixSymbol& s);

/// A tensor symbol document is the ordered list of factor documents.
TensorSymbol load_tensor_symbol(const Json& doc);

Json to_json(const SchattenEstimate& e);
Json to_json(const TraceEstimate& e);
Json to_json(const TensorSchattenEstimate& e);
Json to_json(const DixmierEstimate& e);
Json to_json(const HypothesisReport& r);
Json to_json(const DecayCheck& c);

/// Parses the beta flag of the dixmier surface: either a named family
/// ("inv-sqrt-quadratic" or "inv-power:<s>") or a path/inline JSON object
/// {"<j>": value, ...} with integer keys.
MultiplierBeta parse_beta(const std::string& text);

/// Parses an a_hat object {"<k>": [re, im], ...} into a trig polynomial.
TrigPolynomial parse_a_hat(const Json& doc);

}  // namespace blockspec
