#ifndef SU11_VERSION_HPP
#define SU11_VERSION_HPP

namespace su11 {

/** @brief Library version reported in CLI provenance records. */
inline constexpr const char* library_version = "0.1.0";

}  // namespace su11

#endif  // SU11_VERSION_HPP
