#pragma once

#define NANOMASS_VERSION_STRING "0.3.0"

namespace nanomass {
inline constexpr const char* version = NANOMASS_VERSION_STRING;
}
