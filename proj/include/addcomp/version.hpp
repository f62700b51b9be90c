#pragma once

#include <cstdint>

namespace addcomp {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// Machine word width of the packed-bit set kernels. Recorded in every
// build-info block so serialized binary sets are self-describing.
inline constexpr unsigned kWordBits = 64;

}  // namespace addcomp
