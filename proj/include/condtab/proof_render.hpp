#pragma once

#include <string>

#include <json.hpp>

#include "condtab/tableau.hpp"

namespace condtab {

inline constexpr int kProofSchemaVersion = 1;

/// Numbered proof tree; branches created by PB are indented under their cut.
std::string render_text(const Verdict& v);

nlohmann::json label_json(const Label& l);
nlohmann::json to_json(const Verdict& v);

std::string_view status_name(BranchStatus s);

}  // namespace condtab
