#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fss {

// One problem found in input data. `row` is 1-based and counts the header
// line, so it matches what a text editor shows; 0 means "not row specific".
struct Issue {
  std::string kind;  // schema | dangling_reference | duplicate_key | byline_gap | invalid_value | io
  std::string file;
  std::size_t row = 0;
  std::string column;
  std::string key;
  std::string message;

  std::string describe() const;
};

// Malformed or inconsistent input data. Carries every issue found, not just
// the first one.
class DataError : public std::runtime_error {
 public:
  explicit DataError(std::vector<Issue> issues);
  explicit DataError(Issue issue);

  const std::vector<Issue>& issues() const noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

// Caller error: bad arguments or configuration.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A statistic that has no value for the given input (e.g. a rank correlation
// over a constant vector).
class UndefinedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace fss
