#pragma once

#include <ostream>

#include "tvx/series.hpp"

namespace tvx {

inline void PrintTo(const TruncatedSeries& s, std::ostream* os) { *os << s.str(); }

}  // namespace tvx
