#pragma once

#include <stdexcept>
#include <string>

namespace trussify {

// Failure to open or write a file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input content. Messages carry "path:line:" context where known.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace trussify
