#ifndef SITECALC_TYPES_HPP
#define SITECALC_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sitecalc {

using ObjId = std::int32_t;
using MorId = std::int32_t;

inline constexpr MorId kNoMor = -1;
inline constexpr ObjId kNoObj = -1;

// Size caps. Saturation and family searches are exponential in the number of
// non-identity morphisms into a single object, so that one is the cap that
// actually bites.
struct Limits {
  int max_objects = 64;
  int max_morphisms = 4096;
  int max_fan_in = 16;  // non-identity morphisms into any single object
};

// Enumeration budgets. `family` bounds the raw mixed-radix product of a
// family enumeration; `census` bounds node visits of the presheaf search.
// SITECALC_BUDGET overrides both.
struct Budget {
  std::uint64_t family = 10'000'000;
  std::uint64_t census = 500'000'000;
};

Budget budget_from_env();

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TypeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedTable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPreregular : PreconditionFailed {
  using PreconditionFailed::PreconditionFailed;
};

struct NotExtensive : PreconditionFailed {
  using PreconditionFailed::PreconditionFailed;
};

struct NotPrecoherent : PreconditionFailed {
  using PreconditionFailed::PreconditionFailed;
};

struct NoKernelPair : PreconditionFailed {
  using PreconditionFailed::PreconditionFailed;
};

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& msg, int ln, int col)
      : std::runtime_error(msg + " at line " + std::to_string(ln) + ", column " +
                           std::to_string(col)),
        line(ln),
        column(col) {}
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sitecalc

#endif
