#ifndef INVSTAT_VERSION_HPP
#define INVSTAT_VERSION_HPP

namespace invstat {

inline constexpr const char* toolkit_name = "invstat";
inline constexpr const char* toolkit_version = "0.1.0";

} // namespace invstat

#endif
