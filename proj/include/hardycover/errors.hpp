#pragma once

#include <stdexcept>
#include <string>

namespace hardycover {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invalid_surface : public error {
 public:
  using error::error;
};

/// Words over different alphabets, or indices outside the alphabet.
class word_error : public error {
 public:
  using error::error;
};

class covering_error : public error {
 public:
  using error::error;
};

/// Raised by rewriting when the input does not lie in the subgroup.
class subgroup_error : public error {
 public:
  using error::error;
};

class representation_error : public error {
 public:
  using error::error;
};

class signature_error : public error {
 public:
  using error::error;
};

class transport_error : public error {
 public:
  using error::error;
};

class sampling_error : public error {
 public:
  using error::error;
};

class config_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

}  // namespace hardycover
