#pragma once

#include "lls/chain.hpp"
#include "lls/drop.hpp"
#include "lls/multidegree.hpp"
#include "lls/table.hpp"
#include "lls/tensor.hpp"

#include <json.hpp>

#include <string>

namespace lls {

using Json = nlohmann::json;

Json chain_to_json(const ChainCurve& c);
ChainCurve chain_from_json(const Json& j);

// {"r":6,"d":25,"a":[[column 1],...],"b":[[column 1],...]}, optional "chain".
Json table_to_json(const VanishingTable& t);
VanishingTable table_from_json(const Json& j);
VanishingTable load_table(const std::string& path);

Json twist_to_json(const TwistVector& w);
TwistVector twist_from_json(const Json& j);

Json certificate_to_json(const DropCertificate& cert, const std::vector<PotentialSection>& secs);

std::string render_table_ascii(const VanishingTable& t);
std::string render_table_latex(const VanishingTable& t);
// Two-subcolumn header: c_i over 2d - c_{i+1}, as in the sideways tensor tables.
std::string render_twist_header(const TwistVector& w);
std::string render_tensor_ascii(const TensorTable& tt, const TwistVector& w, const std::vector<PotentialSection>& secs);
std::string render_tensor_latex(const TensorTable& tt, const TwistVector& w, const std::vector<PotentialSection>& secs);

}  // namespace lls
