#pragma once

#include "hogroup/kernels.hpp"

namespace hogroup::kernels {

namespace scalar {
extern const Table kTable;
}
namespace avx2 {
extern const Table kTable;
}
namespace neon {
extern const Table kTable;
}

}  // namespace hogroup::kernels
