#ifndef RENIMM_VERSION_HPP
#define RENIMM_VERSION_HPP

namespace renimm {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
