#ifndef MEASFIELD_WORKSPACE_HPP
#define MEASFIELD_WORKSPACE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "measfield/functor.hpp"

namespace measfield {

/// A named registry of entities loaded from a document.  Names are unique
/// per kind and all cross-references resolve; both are checked at load.
///
/// The document is JSON with top-level keys `spaces`, `measures`,
/// `fibered_measures`, `fields`, `op_fields`, `functors`, `transforms`.
/// Scalars written as strings ("2/3") take the exact-rational path;
/// scalars written as numbers take the double path.  Complex entries are
/// two-element arrays [re, im].
struct Workspace {
  struct SpaceEntry {
    BorelSpace space;
    // set when the space was declared as {"product": [left, right]}
    std::optional<std::pair<std::string, std::string>> factors;
  };
  struct MeasureEntry {
    Measure measure;
    std::string space_name;
  };
  struct FiberedEntry {
    FiberedMeasure measure;
    std::string base_name;
    std::optional<std::string> left_name;   // kernel form
    std::optional<std::string> total_name;  // generic form
  };
  struct FieldEntry {
    HField field;
    std::string space_name;
  };
  struct OpFieldEntry {
    OperatorField op_field;
    std::string source_name, target_name;
  };
  struct FunctorEntry {
    MeasurableFunctor functor;
    std::string source_name, target_name, kernel_name, weights_name;
  };
  struct TransformEntry {
    MeasurableNatTransf transf;
    std::string source_name, target_name, op_field_name;
  };

  std::map<std::string, SpaceEntry> spaces;
  std::map<std::string, MeasureEntry> measures;
  std::map<std::string, FiberedEntry> fibered_measures;
  std::map<std::string, FieldEntry> fields;
  std::map<std::string, OpFieldEntry> op_fields;
  std::map<std::string, FunctorEntry> functors;
  std::map<std::string, TransformEntry> transforms;
};

Workspace load_text(const std::string& text);
Workspace load_file(const std::string& path);

/// Canonical document form: fixed key order, name-sorted entries.  Loading
/// the output and serializing again reproduces it byte for byte.
std::string serialize(const Workspace& ws);

struct RunResult {
  std::string report;
  int exit_code;  // 0 ok, 1 failed checks, 2 errors (set by the caller)
};

/// Executes one command against a workspace.  Commands: info, integrate
/// (field=, measure=), apply (functor=, field=), compose (first=,
/// second=), check (suite=).  Reals print with 12 significant digits.
RunResult run(const std::string& command,
              const std::map<std::string, std::string>& args,
              const Workspace& ws, double tol);

/// Formats a real with 12 significant digits (the report convention).
std::string format_real(double v);

}  // namespace measfield

#endif  // MEASFIELD_WORKSPACE_HPP
