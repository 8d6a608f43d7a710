#pragma once

#include <stdexcept>
#include <string>

namespace phylo {

// Every failure mode carries a stable code so callers (and the CLI exit-code
// mapping) can dispatch without parsing messages.
enum class ErrorCode {
  // structural validation
  CyclicGraph,
  NoRoot,
  MultipleRoots,
  DegreeViolation,
  DuplicateTaxon,
  UnlabeledLeaf,
  LabeledInternalNode,
  UnknownNode,
  UnknownTaxon,
  // text formats
  SyntaxError,
  UnknownHybridReference,
  // operation preconditions
  NotReticulate,
  NotTreeNode,
  NotTreeComponent,
  NotBinary,
  NotQuasiRV,
  HasRedundantNodes,
  ComponentNotExposed,
  EmptyCluster,
  // resource limits
  BudgetExceeded,
  GenerationFailed,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace phylo
