#pragma once

#include <json.hpp>

#include "fwhile/interp.hpp"
#include "fwhile/pre_analysis.hpp"
#include "fwhile/transform.hpp"

namespace fwhile {

using json = nlohmann::json;

State stateFromJson(const json& j);
json stateToJson(const State& s);

json runResultToJson(const RunResult& r);
json runErrorToJson(const RunError& e);

// Per-node annotation dump: id, kind, one-line text, and the analysis
// sets as arrays (variables alphabetical, expressions in universe order).
json analysisToJson(const Program& p, const Analysis& a);

json astToJson(const Stmt& s);
json astToJson(const Program& p);

json rewritesToJson(const OptimizedProgram& opt);

}  // namespace fwhile
