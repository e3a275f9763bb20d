#ifndef M2V_VERSION_HPP
#define M2V_VERSION_HPP

namespace m2v {

inline constexpr const char* kToolVersion = "0.1.0";
// Version of the on-disk matrix/sidecar/manifest formats.
inline constexpr const char* kFormatVersion = "1";

}  // namespace m2v

#endif  // M2V_VERSION_HPP
