#include "error.hpp"

namespace fss {
namespace {

std::string summarize(const std::vector<Issue>& issues) {
  if (issues.empty()) return "data error";
  std::string out = issues.front().describe();
  if (issues.size() > 1) {
    out += " (and " + std::to_string(issues.size() - 1) + " more)";
  }
  return out;
}

}  // namespace

std::string Issue::describe() const {
  std::string out;
  if (!file.empty()) {
    out += file;
    if (row != 0) out += ":" + std::to_string(row);
    out += ": ";
  }
  if (!column.empty()) out += "column '" + column + "': ";
  out += message;
  if (!key.empty()) out += " [" + key + "]";
  return out;
}

DataError::DataError(std::vector<Issue> issues)
    : std::runtime_error(summarize(issues)), issues_(std::move(issues)) {}

DataError::DataError(Issue issue) : DataError(std::vector<Issue>{std::move(issue)}) {}

}  // namespace fss
