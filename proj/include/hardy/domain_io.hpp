#pragma once

#include <filesystem>
#include <string>

#include "hardy/domain.hpp"

namespace hardy {

/// Parses a JSON domain spec: {"kind": ..., kind-specific fields, "base_point": [re, im]}.
/// Throws Error(InvalidSpec) on malformed or invalid input.
DomainSpec parse_domain_spec(const std::string& text);

/// JSON text that parse_domain_spec maps back to an equal spec.
std::string dump_domain_spec(const DomainSpec& spec, int indent = 2);

/// Throws Error(Io) when the file cannot be read.
DomainSpec load_domain_spec(const std::filesystem::path& path);

}  // namespace hardy
