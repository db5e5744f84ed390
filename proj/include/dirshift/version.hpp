#ifndef DIRSHIFT_VERSION_HPP
#define DIRSHIFT_VERSION_HPP

namespace dirshift {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
