#pragma once
// Readable gtest output for library types.

#include <ostream>

#include "clusterx/ratfun.hpp"
#include "clusterx/seed.hpp"

namespace cx {

inline void PrintTo(const RationalFunction& f, std::ostream* os) { *os << f.str(); }
inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.str(); }
inline void PrintTo(const Seed& s, std::ostream* os) { *os << seed_to_json(s).dump(); }

}  // namespace cx
