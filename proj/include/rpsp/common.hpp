#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpsp {

// Element sets are single-word bitmasks; the universe is capped at 63
// elements so a mask always fits.
using Mask = std::uint64_t;

inline constexpr int kMaxElements = 63;

inline Mask bit(int i) { return Mask{1} << i; }
inline int popcount(Mask m) { return std::popcount(m); }
inline int lowest_bit(Mask m) { return std::countr_zero(m); }

std::vector<int> mask_to_elements(Mask m);
Mask elements_to_mask(const std::vector<int>& elems);

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidParameterError : Error { using Error::Error; };
struct InvalidPackingError : Error { using Error::Error; };
struct SizeLimitError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct OverflowError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

}  // namespace rpsp
