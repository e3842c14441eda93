// tm_compiler.hpp — compiles single-tape Turing machines into temperature-1
// polygonal tile systems whose directed assembly simulates the machine.
//
// The construction lays the machine's configuration history out as rows of
// bit clusters.  Each bit is stored geometrically: a cluster whose blocker
// tile occupies one of two positions.  A zig-zag chain of sweeps grows the
// assembly row by row; each sweep reads the previous row bit by bit through
// blocker-gated read gadgets and writes the next row through writer chains,
// applying one machine step per sweep.  decode_rows() recovers the
// configuration trace from the finished assembly by inspecting blocker
// positions, so the whole computation can be checked against the reference
// interpreter.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ptam/cyclotomic.hpp"
#include "ptam/gadget.hpp"
#include "ptam/tam.hpp"

namespace ptam {

// ---------------------------------------------------------------- machines

struct TMTransition {
    int next_state = 0;
    int write_symbol = 0;
    int move = 0;  // -1 left, 0 stay, +1 right
};

struct TMSpec {
    std::vector<std::string> states;    // index = state id
    std::vector<std::string> symbols;   // index = symbol id; symbol 0 is blank
    int start_state = 0;
    std::set<int> halting;              // states with no outgoing rules
    std::map<std::pair<int, int>, TMTransition> rules;  // (state, symbol) ->

    int state_id(const std::string& name) const;
    int symbol_id(const std::string& name) const;
};

// Text format, one directive per line ('#' comments allowed):
//   tm
//   states  q0 q1 halt
//   symbols _ 0 1
//   start   q0
//   halt    halt
//   rule    q0 0 -> q0 1 R
// Moves are L, R or S; the blank symbol is the first listed.
TMSpec parse_tm(const std::string& text);
std::string tm_to_text(const TMSpec& m);

struct TMConfig {
    std::vector<int> tape;  // live cells (at least one)
    int head = 0;
    int state = 0;
    bool operator==(const TMConfig& o) const = default;
};

// Runs m on the input and returns the full configuration trace
// (initial configuration included, so trace.size() == steps + 1).
// Moving left at cell 0 stays put; moving right past the end appends a
// blank.  Throws std::runtime_error if the machine does not halt within
// max_steps.
std::vector<TMConfig> reference_interpret(const TMSpec& m, const std::vector<int>& input,
                                          int max_steps);

// ----------------------------------------------------------- compiled form

struct CompiledTM {
    TileSystem system;
    TMSpec machine;
    std::vector<int> input;

    int n = 0;           // polygon side count
    int Bs = 0, Bq = 0;  // bits per symbol / state
    int S = 0;           // tape-cell field count (slots per cell)
    int cells0 = 0;      // physical cells in row 0 (live cells + 1 spare)
    int rows = 0;        // rows laid out (machine steps + 1)

    // Decode geometry: the cluster storing row r, absolute slot column u sits
    // at col_step*u + row_step*r (+ the per-parity cluster offsets below).
    CycloNum col_step, row_step;
    std::vector<long long> row_origin;            // slot column of cell 0, per row
    // Blocker centers relative to the cluster anchor, per row parity
    // (index 0: rows written by rightward sweeps, 1: leftward).
    CycloNum blocker0[2], blocker1[2];

    CompiledTM() : col_step(3), row_step(3), blocker0{CycloNum(3), CycloNum(3)},
                   blocker1{CycloNum(3), CycloNum(3)} {}
};

// Compiles machine m running on the given input into a tile system with
// n-gon tiles.  Requires n >= 7.  The reference interpreter is consulted
// for sizing only; the tile system performs the computation itself through
// blocker-gated reads.  Throws if the machine does not halt within
// max_steps or the construction exceeds max_types tile types.
CompiledTM compile_tm(const TMSpec& m, const std::vector<int>& input, int n,
                      int max_steps = 200, size_t max_types = 400000);

// Reads the configuration trace back out of an assembly of c.system by
// locating blocker tiles.  Rows decode in order; throws on malformed rows.
std::vector<TMConfig> decode_rows(const Assembly& a, const CompiledTM& c);

// -------------------------------------------------------------- end to end

struct TMSimReport {
    bool ok = false;
    std::string message;
    size_t tile_count = 0;
    size_t type_count = 0;
    int steps = 0;           // machine steps simulated
    bool terminal = false;   // assembly reached a terminal state
};

// Compiles, grows the unique directed assembly (bounded by max_tiles), and
// verifies that decode_rows() equals the reference trace.
TMSimReport simulate_and_verify(const TMSpec& m, const std::vector<int>& input, int n,
                                int max_steps = 200, size_t max_tiles = 50000,
                                uint64_t rng_seed = 1);

}  // namespace ptam
