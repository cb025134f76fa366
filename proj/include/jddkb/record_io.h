#ifndef JDDKB_RECORD_IO_H_
#define JDDKB_RECORD_IO_H_

// JSON-lines exchange format for extracted records. The first line is the
// header {"schema_version": "jddkb-records/1"}; each further line is one
// JddRecord with the field names of the model.

#include <filesystem>
#include <string>
#include <vector>

#include "jddkb/errors.h"
#include "jddkb/model.h"
#include "json.hpp"

namespace jddkb {

inline constexpr std::string_view kRecordsSchema = "jddkb-records/1";

nlohmann::json to_json(const Party& p);
nlohmann::json to_json(const ActionRecord& a);
nlohmann::json to_json(const DamageValue& d);
nlohmann::json to_json(const PunishmentVector& v);
nlohmann::json to_json(const JddRecord& r);

// All throw ParseError naming the offending field.
Party party_from_json(const nlohmann::json& j);
ActionRecord action_from_json(const nlohmann::json& j);
DamageValue damage_from_json(const nlohmann::json& j);
PunishmentVector punishment_from_json(const nlohmann::json& j);
JddRecord record_from_json(const nlohmann::json& j);

std::string serialize_record(const JddRecord& r);  // one line, no newline

// Throws IoError.
void write_records(const std::filesystem::path& path,
                   const std::vector<JddRecord>& records);
// Missing or unreadable file throws IoError; bad lines are reported and
// skipped. A wrong schema header throws ParseError.
std::vector<JddRecord> read_records(const std::filesystem::path& path,
                                    Diagnostics& diagnostics);

}  // namespace jddkb

#endif  // JDDKB_RECORD_IO_H_
