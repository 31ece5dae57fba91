#pragma once

// JSON views of the library types, used by the command-line reports.
// Complex numbers serialize as [re, im]; matrices as row-major entry lists
// with explicit shape fields.

#include <json.hpp>

#include "sqc/mps.hpp"
#include "sqc/protocol.hpp"

namespace sqc {

nlohmann::json json_complex(const cplx& z);
nlohmann::json json_vector(const ComplexVector& v);
nlohmann::json json_matrix(const ComplexMatrix& m);
nlohmann::json json_state(const PureState& s);
nlohmann::json json_step(const IsometryStep& st);
nlohmann::json json_mps(const MpsForm& f);
nlohmann::json json_clone_report(const CloneRunReport& rep);

}  // namespace sqc
