#pragma once

#include "qkt/kernels.hpp"

namespace qkt::kernels::detail {

extern const KernelTable kScalarTable;
#if defined(QKT_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif

}  // namespace qkt::kernels::detail
