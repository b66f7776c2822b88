#pragma once

// Spec files, command pipelines and reports for the frobkit tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobkit/frobenius.hpp"

namespace frobkit {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int { kPass = 0, kFail = 1, kInapplicable = 2, kInputError = 3 };

/// Parses and validates a spec document. Throws SpecError (schema, rank,
/// degrees, metric) or ParseError (potential grammar, with line and column).
FrobeniusSpec spec_from_json(const nlohmann::json& doc);
nlohmann::json spec_to_json(const FrobeniusSpec& spec);
/// Reads a file; the SHA-256 of its bytes is stored in `digest` when given.
FrobeniusSpec load_spec(const std::string& path, std::string* digest = nullptr);

std::string sha256_hex(const std::string& bytes);

struct RunOptions {
  std::size_t samples = 20;
  std::uint64_t seed = 0;
  std::vector<std::string> only;  // --check filter; a name also selects "name.*"
  bool timing = false;
};

struct Report {
  std::string command;
  nlohmann::json doc;  // status, checks, values, notes, spec, meta
  int exit_code = kPass;
};

/// Runs verify, conjugate, invert, pencil or oracle. Throws SpecError for an
/// unknown command or an unknown --check name.
Report run_command(const std::string& command, const FrobeniusSpec& spec, const std::string& digest,
                   const RunOptions& options);

/// Canonical JSON (sorted keys, two-space indent, trailing newline).
std::string emit_json(const Report& report);
std::string emit_text(const Report& report);

}  // namespace frobkit
