#pragma once

// Closed-form per-instant operation counts for the diffusion CG family.
//
// Each row is L*(base polynomial in M) + L*J*(per-iteration polynomial in M)
// for additions and for multiplications. MCG rows have no per-iteration term.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace dcg {

enum class ComplexityMethod {
  CTA_CG,
  ATC_CG,
  CTA_MCG,
  ATC_MCG,
  ZA_CTA_CG,
  ZA_ATC_CG,
  ZA_CTA_MCG,
  ZA_ATC_MCG,
  RZA_CTA_CG,
  RZA_ATC_CG,
  RZA_CTA_MCG,
  RZA_ATC_MCG,
};

inline constexpr std::array<ComplexityMethod, 12> kAllComplexityMethods{
    ComplexityMethod::CTA_CG,     ComplexityMethod::ATC_CG,     ComplexityMethod::CTA_MCG,
    ComplexityMethod::ATC_MCG,    ComplexityMethod::ZA_CTA_CG,  ComplexityMethod::ZA_ATC_CG,
    ComplexityMethod::ZA_CTA_MCG, ComplexityMethod::ZA_ATC_MCG, ComplexityMethod::RZA_CTA_CG,
    ComplexityMethod::RZA_ATC_CG, ComplexityMethod::RZA_CTA_MCG, ComplexityMethod::RZA_ATC_MCG,
};

struct ComplexityInputs {
  std::int64_t M = 1;
  std::int64_t J = 1;
  std::int64_t L = 1;  ///< number of nodes

  void validate() const {
    if (M < 1 || J < 1 || L < 1) throw std::invalid_argument("complexity: M, J, L must all be >= 1");
  }
};

struct OperationCount {
  std::int64_t additions = 0;
  std::int64_t multiplications = 0;

  bool operator==(const OperationCount&) const = default;
};

namespace detail {

/// c2*M^2 + c1*M + c0
struct Quadratic {
  std::int64_t c2 = 0;
  std::int64_t c1 = 0;
  std::int64_t c0 = 0;

  constexpr std::int64_t operator()(std::int64_t m) const { return c2 * m * m + c1 * m + c0; }
};

struct ComplexityRow {
  std::string_view name;
  Quadratic add_base;
  Quadratic add_per_iter;
  Quadratic mul_base;
  Quadratic mul_per_iter;
};

// ZA-CTA-MCG and ZA-ATC-MCG multiplications are scaled by L like every
// other cell, even though their published cells lack the factor.
inline constexpr std::array<ComplexityRow, 12> kComplexityRows{{
    {"CTA-CG", {1, 2, 0}, {2, 6, -3}, {2, 4, 0}, {3, 4, -1}},
    {"ATC-CG", {1, 3, -1}, {1, 6, -3}, {2, 3, 0}, {3, 4, -1}},
    {"CTA-MCG", {3, 9, -4}, {}, {4, 9, -1}, {}},
    {"ATC-MCG", {4, 9, -3}, {}, {6, 8, -1}, {}},
    {"ZA-CTA-CG", {1, 3, 0}, {2, 6, -3}, {2, 5, 0}, {3, 4, -1}},
    {"ZA-ATC-CG", {1, 3, 0}, {2, 6, -3}, {2, 5, 0}, {3, 4, -1}},
    {"ZA-CTA-MCG", {3, 10, -4}, {}, {4, 10, -1}, {}},
    {"ZA-ATC-MCG", {4, 10, -3}, {}, {6, 9, -1}, {}},
    {"RZA-CTA-CG", {1, 2, 0}, {2, 8, -3}, {2, 4, 0}, {3, 6, -1}},
    {"RZA-ATC-CG", {1, 3, -1}, {2, 8, -3}, {2, 3, 0}, {3, 6, -1}},
    {"RZA-CTA-MCG", {3, 11, -4}, {}, {4, 11, -1}, {}},
    {"RZA-ATC-MCG", {4, 11, -3}, {}, {6, 10, -1}, {}},
}};

inline const ComplexityRow& row(ComplexityMethod m) {
  return kComplexityRows[static_cast<std::size_t>(m)];
}

}  // namespace detail

inline std::string_view to_string(ComplexityMethod m) { return detail::row(m).name; }

inline std::optional<ComplexityMethod> complexity_method_from_string(std::string_view name) {
  for (ComplexityMethod m : kAllComplexityMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

/// True for the rows with a J-dependent inner loop.
inline bool has_inner_loop(ComplexityMethod m) {
  const auto& r = detail::row(m);
  return r.add_per_iter(1) != 0 || r.mul_per_iter(1) != 0;
}

inline OperationCount complexity_eval(ComplexityMethod method, const ComplexityInputs& in) {
  in.validate();
  const auto& r = detail::row(method);
  const std::int64_t lj = in.L * in.J;
  return {in.L * r.add_base(in.M) + lj * r.add_per_iter(in.M),
          in.L * r.mul_base(in.M) + lj * r.mul_per_iter(in.M)};
}

}  // namespace dcg
