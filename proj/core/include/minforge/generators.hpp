#pragma once

#include "minforge/model.hpp"

namespace minforge {

/// Layout grid shared by every generator.
constexpr int column_pitch = 160;
constexpr int row_pitch = 100;
constexpr Point layout_origin{100, 100};

/// log2(n) stages of n/2 switch_2x2 joined by perfect shuffles. Ids: sources
/// 0..n-1, switches stage-major, then destinations. Throws InvalidSize unless
/// n is a power of two >= 4.
Circuit generate_omega(std::size_t n_terminals);

/// `copies` parallel planes of the base's switching fabric. Fresh source and
/// destination terminals fan out to / in from every plane. Throws
/// InvalidCircuit for copies < 2, a structurally invalid base, or a base
/// without source and destination terminals.
Circuit generate_replicated(const Circuit& base, std::size_t copies);

/// Omega with one leading stage of n/2 switch_2x2, giving every terminal
/// pair two routes. Throws InvalidSize.
Circuit generate_extra_stage(std::size_t n_terminals);

} // namespace minforge
