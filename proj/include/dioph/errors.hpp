#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

// Input whose equation degenerates to 0 = 0 (infinitely many roots).
struct DegenerateEquationError : std::invalid_argument {
  explicit DegenerateEquationError(const std::string& what) : std::invalid_argument(what) {}
};

// Collinear point sets admit infinitely many integral-distance extensions,
// so no finite enumeration exists.
struct InfiniteFamilyError : std::runtime_error {
  explicit InfiniteFamilyError(const std::string& what) : std::runtime_error(what) {}
};

// A condition the geometry guarantees impossible was observed; indicates a
// bug or corrupted input that slipped past validation.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace dioph
