#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "lgorb/hrr.hpp"
#include "lgorb/problem.hpp"

namespace lgorb {

/// JSON encodings of reports. Exact scalars and polynomials are strings in
/// the polynomial grammar; keys are sorted, so dumps are byte-stable.
nlohmann::json sector_json(const LGModel& model, const Sector& s);
nlohmann::json model_json(const LGModel& model, const std::vector<FixedLocus>& loci);
nlohmann::json validate_json(const Problem& pb, const std::vector<FixedLocus>& loci);
nlohmann::json chern_json(const EquivMF& P, const std::vector<FixedLocus>& loci);
nlohmann::json to_json(const HRRReport& r);
nlohmann::json to_json(const CardyReport& r);
nlohmann::json to_json(const DiagonalReport& r);

/// Human-readable rendering of any JSON report produced above.
std::string render_text(const nlohmann::json& report);

}  // namespace lgorb
