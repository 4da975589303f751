#pragma once

#include <span>

namespace targettox::embedding {

// u.v / (|u| |v|), clamped to [-1, 1]. Throws Error(InvalidArgument) on a
// length mismatch and Error(Numeric) "undefined cosine" for a zero vector.
double cosine(std::span<const double> u, std::span<const double> v);
double cosine(std::span<const float> u, std::span<const float> v);

}  // namespace targettox::embedding
