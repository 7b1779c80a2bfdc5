#pragma once

#include <filesystem>
#include <string>

#include "phoneagent/core/json_fields.hpp"
#include "phoneagent/core/memory.hpp"

namespace phoneagent {

/// Format tag written at the top of every long-term memory file.
inline constexpr std::string_view kMemoryFormat = "phoneagent.memory.v1";

// Shortcut records use the same schema on disk, in reflector output and in
// prompts:
//
//   {
//     "name": "Tap_Type_and_Enter",
//     "arguments": ["x", "y", "text"],
//     "description": "...",
//     "precondition": "...",
//     "atomic_action_sequence": [
//       {"name": "Tap", "arguments_map": {"x": "x", "y": "y"}},
//       {"name": "Type", "arguments_map": {"text": "text"}},
//       {"name": "Enter", "arguments_map": {}}
//     ]
//   }
//
// In `arguments_map` a string names a shortcut argument, an integer is a
// literal coordinate, and {"literal": v} is a literal of either kind.

Json shortcut_to_json(const Shortcut& shortcut);
Shortcut shortcut_from_json(const Json& value, const std::string& path);

Json provenance_to_json(const Provenance& provenance);
Provenance provenance_from_json(const Json& value, const std::string& path);

Json memory_to_json(const LongTermMemory& memory);
/// Decodes a memory document. Duplicate shortcut names and non-dense tip ids
/// are decode errors.
LongTermMemory memory_from_json(const Json& value);

void save_memory(const LongTermMemory& memory, const std::filesystem::path& path);
LongTermMemory load_memory(const std::filesystem::path& path);

/// Serialized text exactly as save_memory writes it.
std::string serialize_memory(const LongTermMemory& memory);

}  // namespace phoneagent
