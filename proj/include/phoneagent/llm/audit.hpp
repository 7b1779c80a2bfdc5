#pragma once

#include <filesystem>
#include <memory>
#include <mutex>

#include "phoneagent/llm/request.hpp"

namespace phoneagent {

/// Decorator persisting every request/response pair as
/// `<dir>/NNNN_<caller>.json` (NNNN counts from 0001). Image paths are written
/// relative to `base`. A failed call is logged with an "error" field and the
/// exception is rethrown.
class AuditingBackend final : public ModelBackend {
 public:
  AuditingBackend(std::shared_ptr<ModelBackend> inner, std::filesystem::path dir, std::filesystem::path base);
  std::string complete(const ModelRequest& request) override;

  int count() const;

 private:
  std::shared_ptr<ModelBackend> inner_;
  std::filesystem::path dir_;
  std::filesystem::path base_;
  mutable std::mutex mutex_;
  int count_ = 0;
};

}  // namespace phoneagent
