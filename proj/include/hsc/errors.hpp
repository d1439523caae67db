#pragma once

#include <stdexcept>
#include <string>

namespace hsc {

// Every failure mode gets its own type so callers (and the CLI) can name it.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct symmetry_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct singular_geometry_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct inversion_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct range_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct internal_consistency_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct operator_inversion_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct regime_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct fit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct filesystem_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hsc
