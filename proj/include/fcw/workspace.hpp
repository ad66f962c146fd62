#pragma once

// Text workspace: named signatures, structures, graphs, trees and
// partitions declared in a small line-oriented DSL.  Parse errors carry
// line and column.

#include <map>
#include <string>

#include "fcw/logic.hpp"
#include "fcw/pgroups.hpp"
#include "fcw/trees.hpp"

namespace fcw {

struct Workspace {
  std::map<std::string, Signature> signatures;
  std::map<std::string, FinStructure> structures;
  std::map<std::string, FinStructure> graphs;  // always over {E/2}, symmetric
  std::map<std::string, FinTree> trees;
  std::map<std::string, Partition> partitions;
};

Workspace parse_workspace(const std::string& text);

/// Canonical text form; re-parsing yields an identical workspace.
std::string print_workspace(const Workspace& ws);

/// Finds a declared structure or graph by name (structures shadow graphs).
const FinStructure* structure_named(const Workspace& ws, const std::string& name);

/// "w^2*3+w+4" style Cantor normal forms (matching format_ordinal).
Ordinal parse_ordinal(const std::string& text);

/// One line per level; entries `rank count [many]` separated by `;`.
LevelRankProfile parse_profile(const std::string& text);

}  // namespace fcw
