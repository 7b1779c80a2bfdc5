#include "phoneagent/core/memory_io.hpp"

#include <set>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {
namespace {

Json arg_value_to_json(const ArgValue& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
  return std::get<std::string>(value);
}

SlotValue slot_from_json(const Json& value, const std::string& path) {
  if (value.is_string()) return ArgRef{value.get<std::string>()};
  if (value.is_number_integer()) return ArgValue{value.get<std::int64_t>()};
  if (value.is_object()) {
    const Json& literal = fields::required(value, "literal", path);
    if (literal.is_number_integer()) return ArgValue{literal.get<std::int64_t>()};
    if (literal.is_string()) return ArgValue{literal.get<std::string>()};
    throw DecodeError(fields::join(path, "literal"), "expected an integer or string");
  }
  throw DecodeError(path, "expected an argument name, integer, or {\"literal\": ...}");
}

Json slot_to_json(const SlotValue& slot) {
  if (const auto* ref = std::get_if<ArgRef>(&slot)) return ref->name;
  const auto& literal = std::get<ArgValue>(slot);
  if (std::holds_alternative<std::int64_t>(literal)) return arg_value_to_json(literal);
  Json wrapped = Json::object();
  wrapped["literal"] = arg_value_to_json(literal);
  return wrapped;
}

}  // namespace

Json shortcut_to_json(const Shortcut& shortcut) {
  Json out = Json::object();
  out["name"] = shortcut.name;
  out["arguments"] = shortcut.arguments;
  out["description"] = shortcut.description;
  out["precondition"] = shortcut.precondition;
  Json sequence = Json::array();
  for (const auto& step : shortcut.sequence) {
    Json entry = Json::object();
    entry["name"] = step.operation;
    Json map = Json::object();
    for (const auto& [param, slot] : step.slots) map[param] = slot_to_json(slot);
    entry["arguments_map"] = std::move(map);
    sequence.push_back(std::move(entry));
  }
  out["atomic_action_sequence"] = std::move(sequence);
  return out;
}

Shortcut shortcut_from_json(const Json& value, const std::string& path) {
  fields::object(value, path);
  Shortcut shortcut;
  shortcut.name = fields::string(value, "name", path);
  shortcut.description = fields::string_or(value, "description", path, "");
  shortcut.precondition = fields::string_or(value, "precondition", path, "");

  const std::string args_path = fields::join(path, "arguments");
  if (const Json* args = fields::optional(value, "arguments")) {
    fields::array(*args, args_path);
    for (std::size_t i = 0; i < args->size(); ++i) {
      if (!(*args)[i].is_string()) throw DecodeError(fields::index(args_path, i), "expected a string");
      shortcut.arguments.push_back((*args)[i].get<std::string>());
    }
  }

  const std::string seq_path = fields::join(path, "atomic_action_sequence");
  const Json& sequence = fields::array(fields::required(value, "atomic_action_sequence", path), seq_path);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const std::string step_path = fields::index(seq_path, i);
    OperationTemplate step;
    step.operation = fields::string(sequence[i], "name", step_path);
    if (const Json* map = fields::optional(sequence[i], "arguments_map")) {
      const std::string map_path = fields::join(step_path, "arguments_map");
      fields::object(*map, map_path);
      for (const auto& [param, slot] : map->items()) {
        step.slots.emplace_back(param, slot_from_json(slot, fields::join(map_path, param)));
      }
    }
    shortcut.sequence.push_back(std::move(step));
  }
  return shortcut;
}

Json provenance_to_json(const Provenance& provenance) {
  Json out = Json::object();
  if (provenance.origin == Provenance::Origin::Seed) {
    out["origin"] = "seed";
  } else {
    out["origin"] = "evolved";
    out["task"] = provenance.task_id;
  }
  return out;
}

Provenance provenance_from_json(const Json& value, const std::string& path) {
  const std::string origin = fields::string(value, "origin", path);
  if (origin == "seed") return Provenance::seed();
  if (origin == "evolved") return Provenance::evolved(fields::string(value, "task", path));
  throw DecodeError(fields::join(path, "origin"), "expected \"seed\" or \"evolved\"");
}

Json memory_to_json(const LongTermMemory& memory) {
  Json out = Json::object();
  out["format"] = kMemoryFormat;
  Json shortcuts = Json::array();
  for (const auto& stored : memory.shortcuts()) {
    Json entry = shortcut_to_json(stored.shortcut);
    entry["provenance"] = provenance_to_json(stored.provenance);
    shortcuts.push_back(std::move(entry));
  }
  out["shortcuts"] = std::move(shortcuts);
  Json tips = Json::array();
  for (const auto& stored : memory.tips()) {
    Json entry = Json::object();
    entry["id"] = stored.tip.id;
    entry["text"] = stored.tip.text;
    entry["provenance"] = provenance_to_json(stored.provenance);
    tips.push_back(std::move(entry));
  }
  out["tips"] = std::move(tips);
  return out;
}

LongTermMemory memory_from_json(const Json& value) {
  fields::object(value, "");
  const std::string format = fields::string(value, "format", "");
  if (format != kMemoryFormat) {
    throw DecodeError("format", "unsupported memory format '" + format + "'");
  }
  LongTermMemory memory;
  const Json& shortcuts = fields::array(fields::required(value, "shortcuts", ""), "shortcuts");
  for (std::size_t i = 0; i < shortcuts.size(); ++i) {
    const std::string path = fields::index("shortcuts", i);
    Shortcut shortcut = shortcut_from_json(shortcuts[i], path);
    Provenance provenance = provenance_from_json(
        fields::required(shortcuts[i], "provenance", path), fields::join(path, "provenance"));
    const std::string name = shortcut.name;
    if (!memory.add_shortcut(std::move(shortcut), std::move(provenance))) {
      throw DecodeError(fields::join(path, "name"), "duplicate shortcut name '" + name + "'");
    }
  }
  const Json& tips = fields::array(fields::required(value, "tips", ""), "tips");
  for (std::size_t i = 0; i < tips.size(); ++i) {
    const std::string path = fields::index("tips", i);
    const long long id = fields::integer(tips[i], "id", path);
    if (id != static_cast<long long>(i) + 1) {
      throw DecodeError(fields::join(path, "id"), "tip ids must be dense starting at 1");
    }
    std::string text = fields::string(tips[i], "text", path);
    if (text.empty()) throw DecodeError(fields::join(path, "text"), "tip text is empty");
    memory.add_tip(std::move(text), provenance_from_json(fields::required(tips[i], "provenance", path),
                                                         fields::join(path, "provenance")));
  }
  return memory;
}

std::string serialize_memory(const LongTermMemory& memory) {
  return memory_to_json(memory).dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

void save_memory(const LongTermMemory& memory, const std::filesystem::path& path) {
  write_text_file(path, serialize_memory(memory));
}

LongTermMemory load_memory(const std::filesystem::path& path) {
  return memory_from_json(read_json_file(path));
}

}  // namespace phoneagent
