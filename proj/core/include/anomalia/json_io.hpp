#pragma once

#include <string>

#include "anomalia/lagrangian.hpp"
#include "anomalia/orbifold.hpp"

namespace anomalia {

// Canonical JSON encodings used by the CLI and by files on disk. Rationals
// are reduced "num/den" strings ("0" for zero); groups are {"factors": [...]};
// elements are integer arrays; subgroups are {"generators": [[...], ...]}.
// Emission is deterministic (fixed key order, compact separators); parsing is
// strict about shapes and throws InvalidInputError with a reason.

std::string group_to_json(const FinAbGroup& g);
FinAbGroup group_from_json(const std::string& text);

std::string subgroup_to_json(const Subgroup& h);
Subgroup subgroup_from_json(const FinAbGroup& parent, const std::string& text);

std::string form_to_json(const QuadraticForm& f);
QuadraticForm form_from_json(const std::string& text);

/// {"metric": <form>, "iota_images": [<elt>], "quot_generator_lift": <elt>,
///  "anomaly_index": j}  (the index is informative; parsing ignores it)
std::string extension_to_json(const LagrangianExtension& e);
LagrangianExtension extension_from_json(const std::string& text);

std::string report_to_json(const OrbifoldReport& r);

} // namespace anomalia
