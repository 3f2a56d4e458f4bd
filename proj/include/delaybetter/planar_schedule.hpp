#pragma once

#include "core.hpp"

namespace delaybetter {

// Color indices used throughout the edge-precoloring construction.
enum class EdgeColor : int { Blue = 0, Red = 1, Green = 2, Uncolored = 3 };

inline const char* edge_color_name(EdgeColor c) {
    switch (c) {
        case EdgeColor::Blue: return "B";
        case EdgeColor::Red: return "R";
        case EdgeColor::Green: return "G";
        case EdgeColor::Uncolored: return "U";
    }
    return "?";
}

// All pinned times of the precoloring-extension construction in one place.
//
// The bold source edges, intra-layer chains and delivery chains below are a
// reconstruction chosen so that hermits depart side-A vertices no earlier than
// 2/5/8, reach the third layer vertex by 4/8/12, and are delivered to side-B
// layers by 10/14/18; the normative checks are forward-direction verification
// plus the structural bounds (degree <= 10, Euler bound), not these exact
// values. See the README note on this schedule.
struct PlanarSchedule {
    // Side A (one gadget per vertex u in part A).
    Time a_source_bold[3] = {1, 4, 7};  // s_B/s_R/s_G -> u
    // Spoke chain u -> u_B^j -> u_R^j -> u_G^j, timed by the color of the edge
    // to the j-th neighbor.
    Time a_spoke[3][3] = {{2, 3, 4}, {5, 6, 7}, {8, 9, 10}};
    // Intra-layer bold chains X^1 -> X^2 -> X^3.
    Time a_layer_chain[3][2] = {{3, 4}, {7, 8}, {11, 12}};
    Time a_hermit_deadline[3] = {4, 8, 12};

    // Edge gadget: bold hops u_G^j -> uv_X -> v_B^i.
    Time gadget_in[3] = {7, 10, 13};
    Time gadget_out[3] = {8, 11, 14};

    // Side B.
    // Delivery chains s_X^v -> v_X^1 -> v_X^2 -> v_X^3 (bold).
    Time b_delivery[3][3] = {{8, 9, 10}, {12, 13, 14}, {16, 17, 18}};
    // Spoke chain v_B^i -> v_R^i -> v_G^i -> v, timed by the color of the edge
    // to the i-th neighbor.
    Time b_spoke[3][3] = {{11, 12, 13}, {14, 15, 16}, {17, 18, 19}};
    Time b_hermit_deadline[3] = {13, 16, 19};

    Time traveler_deadline = 19;

    // Initial labels for non-bold (spoke) edges in the delta = 10 variant;
    // the largest delay is then 19 - 9 = 10.
    Time nonbold_a_initial = 2;
    Time nonbold_b_initial = 9;
    Time delta_variant_delta = 10;
};

inline constexpr int kColorCount = 3;

}  // namespace delaybetter
