#include "phoneagent/llm/audit.hpp"

#include <cstdio>

namespace phoneagent {

AuditingBackend::AuditingBackend(std::shared_ptr<ModelBackend> inner, std::filesystem::path dir,
                                 std::filesystem::path base)
    : inner_(std::move(inner)), dir_(std::move(dir)), base_(std::move(base)) {}

int AuditingBackend::count() const {
  std::lock_guard lock(mutex_);
  return count_;
}

std::string AuditingBackend::complete(const ModelRequest& request) {
  int index;
  {
    std::lock_guard lock(mutex_);
    index = ++count_;
  }
  char name[16];
  std::snprintf(name, sizeof name, "%04d_", index);
  const auto file = dir_ / (name + request.caller + ".json");

  Json record = Json::object();
  record["index"] = index;
  record["request"] = request_to_json(request, base_);
  try {
    std::string response = inner_->complete(request);
    record["response"] = response;
    write_json_file(file, record);
    return response;
  } catch (const std::exception& e) {
    record["error"] = e.what();
    write_json_file(file, record);
    throw;
  }
}

}  // namespace phoneagent
