#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "channelfield/tessellation.hpp"

namespace channelfield {

// Outcome of following the successor construction from a start point:
// levels[n] is the base point of the n-th channel (defined once b_flags[n]
// holds), the stopping coordinate arrays follow the alternating scheme
// U_0 = y1, V_0 = y2, V_1 = top of channel 0, U_m = U~_m + 1, ... and
// U~/V~ hold the blocking abscissae/ordinates (V~_1 is the base ordinate of
// channel 0, so V_m = V~_m + 1 uniformly).
//
// L[n] is the rescaled residual channel length at acceptance of level n,
// R[n] (n >= 1) the gap from the entry of channel n-1 to its blocking, and
// e[n] = R[n] / r(xi_{k_{n-1}}) the gap normalized by the total blocking
// rate of the channel being blocked (e[0] = 0).
struct ChainRecord {
    Vec2 y;
    std::vector<MarkedPoint> levels;
    std::vector<double> U, V;
    std::vector<double> U_tilde, V_tilde;
    std::vector<double> L, R, e;
    std::vector<char> b_flags, a_flags;
    // Entry coordinate of channel n-1: the level at which levels[n] is a
    // successor of levels[n-1] (y1 for the first pair); one per accepted pair.
    std::vector<double> pair_levels;
    int terminal_level = -1;          // deepest n with a_flags[n]; -1 if none
    bool truncated = false;           // window exhausted before a decision
    std::uint32_t anomalies = 0;      // defensive clamps; 0 on valid input

    void write_json(std::ostream& os) const;
};

// The four displayed successor conditions of D(eta_j) over D(eta_i) at the
// given level coordinate, decided exactly through region queries.
// Precondition: D(eta_i) meets the line {x^sigma_i = level} and all queried
// regions lie inside the validity window.
bool is_successor(const MarkedPoint& eta_i, const MarkedPoint& eta_j,
                  double level, const TessellationView& view);

// Follows the constructive event chain from y (horizontal first phase):
// B_0/A_0 at the start square, then alternately the first blocking of the
// current channel, the complete-blocking test B_n, and the dominance test
// A_n, for up to n_max levels. A start in the vertical phase is the same
// call on reflected(config).
ChainRecord detect_chain(Vec2 y, const TessellationView& view, int n_max);

// Residual length L_n of an accepted level (throws otherwise).
double residual_length(const ChainRecord& chain, int n);

// First-hit coordinates of the four blocking classes of channel n, measured
// from the stopping coordinate Z_n; right-censored at the window edge.
struct BlockingTimes {
    std::array<double, 4> tau{};
    std::array<char, 4> censored{};
    double censor_bound = 0.0;
    double channel_rest = 0.0;  // xi_{k_n} L_n, the channel-end competitor
    bool complete = false;      // margins inside the window on every side
};

BlockingTimes blocking_times(const ChainRecord& chain, int n,
                             const TessellationView& view);

ChainRecord reflect(const ChainRecord& record);

}  // namespace channelfield
