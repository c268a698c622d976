#include "resource/share.hpp"

#include <stdexcept>

namespace gridecon {

ShareAllocation pe_share_allocation(double duration, int n_exec, int n_pes,
                                    double mips_per_pe) {
  if (n_exec < 1 || n_pes < 1)
    throw std::invalid_argument("pe_share_allocation: counts must be >= 1");
  if (duration < 0.0) throw std::invalid_argument("pe_share_allocation: negative duration");

  const double total_mi_per_pe = mips_per_pe * duration;
  ShareAllocation share;
  if (n_exec <= n_pes) {
    share.max_share = total_mi_per_pe;
    share.min_share = total_mi_per_pe;
    share.max_share_count = n_exec;
  } else {
    const int min_gridlets_per_pe = n_exec / n_pes;
    const int pes_running_one_extra = n_exec % n_pes;
    share.max_share = total_mi_per_pe / min_gridlets_per_pe;
    // with an even split no PE runs an extra gridlet and everyone gets the max
    share.min_share = pes_running_one_extra == 0
                          ? share.max_share
                          : total_mi_per_pe / (min_gridlets_per_pe + 1);
    share.max_share_count = (n_pes - pes_running_one_extra) * min_gridlets_per_pe;
  }
  return share;
}

}  // namespace gridecon
