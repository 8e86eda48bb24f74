#pragma once

#include <stdexcept>

namespace septree {

/// Base class for every error this library throws.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an argument precondition (bad id, out-of-range parameter).
class validation_error : public error {
 public:
  using error::error;
};

/// Malformed text input; messages carry the offending line number.
class parse_error : public error {
 public:
  using error::error;
};

/// Input parsed fine but describes an inconsistent structure
/// (arc to an unknown vertex, missing coordinate record, self-loop).
class structural_error : public error {
 public:
  using error::error;
};

/// Filesystem or stream failure.
class io_error : public error {
 public:
  using error::error;
};

/// Index file rejected at load time: bad magic, version, kind,
/// truncation, or checksum mismatch. Never yields a partial index.
class format_error : public error {
 public:
  using error::error;
};

/// Index fingerprint does not match the graph it is being used with.
class stale_index_error : public error {
 public:
  using error::error;
};

}  // namespace septree
