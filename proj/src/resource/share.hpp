#pragma once

namespace gridecon {

// MI shares granted to co-resident gridlets on a time-shared resource over a
// duration. max_share_count gridlets receive max_share, the remaining
// n_exec - max_share_count receive min_share.
struct ShareAllocation {
  double max_share = 0.0;
  double min_share = 0.0;
  int max_share_count = 0;
};

// Equal PE-share split of `duration` across n_exec gridlets on n_pes PEs of
// the given per-PE rating. When gridlets outnumber PEs, each PE runs either
// floor(n/p) or floor(n/p)+1 gridlets and a gridlet's share is its PE's
// capacity divided by that occupancy.
ShareAllocation pe_share_allocation(double duration, int n_exec, int n_pes,
                                    double mips_per_pe);

}  // namespace gridecon
