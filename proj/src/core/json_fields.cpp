#include "phoneagent/core/json_fields.hpp"

#include <fstream>
#include <sstream>

#include "phoneagent/core/errors.hpp"

namespace phoneagent {
namespace fields {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

const Json& object(const Json& value, const std::string& path) {
  if (!value.is_object()) throw DecodeError(path, "expected an object");
  return value;
}

const Json& array(const Json& value, const std::string& path) {
  if (!value.is_array()) throw DecodeError(path, "expected an array");
  return value;
}

const Json& required(const Json& obj, std::string_view key, const std::string& path) {
  object(obj, path);
  auto it = obj.find(std::string(key));
  if (it == obj.end()) throw DecodeError(join(path, key), "missing field");
  return *it;
}

const Json* optional(const Json& obj, std::string_view key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(std::string(key));
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string string(const Json& obj, std::string_view key, const std::string& path) {
  const Json& v = required(obj, key, path);
  if (!v.is_string()) throw DecodeError(join(path, key), "expected a string");
  return v.get<std::string>();
}

std::string string_or(const Json& obj, std::string_view key, const std::string& path,
                      std::string fallback) {
  const Json* v = optional(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_string()) throw DecodeError(join(path, key), "expected a string");
  return v->get<std::string>();
}

long long integer(const Json& obj, std::string_view key, const std::string& path) {
  const Json& v = required(obj, key, path);
  if (!v.is_number_integer()) throw DecodeError(join(path, key), "expected an integer");
  return v.get<long long>();
}

std::vector<int> int_tuple(const Json& value, std::size_t n, const std::string& path) {
  if (!value.is_array() || value.size() != n) {
    throw DecodeError(path, "expected an array of " + std::to_string(n) + " integers");
  }
  std::vector<int> out;
  for (const auto& v : value) {
    if (!v.is_number_integer()) throw DecodeError(path, "expected integers");
    out.push_back(v.get<int>());
  }
  return out;
}

long long integer_or(const Json& obj, std::string_view key, const std::string& path,
                     long long fallback) {
  const Json* v = optional(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_number_integer()) throw DecodeError(join(path, key), "expected an integer");
  return v->get<long long>();
}

double number_or(const Json& obj, std::string_view key, const std::string& path, double fallback) {
  const Json* v = optional(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_number()) throw DecodeError(join(path, key), "expected a number");
  return v->get<double>();
}

bool boolean_or(const Json& obj, std::string_view key, const std::string& path, bool fallback) {
  const Json* v = optional(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_boolean()) throw DecodeError(join(path, key), "expected a boolean");
  return v->get<bool>();
}

}  // namespace fields

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("file not found: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DecodeError(path.filename().string(), e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& value) {
  write_text_file(path, value.dump(2, ' ', false, Json::error_handler_t::replace) + "\n");
}

}  // namespace phoneagent
