#pragma once

// Goedel numbering of syntax trees.
//
// A code is read as a little-endian bit stream terminated by its most
// significant 1 bit (the sentinel). A node is written as a 5-bit opcode,
// then its numeric payload (if any) in the self-delimiting form below, then
// its children in order. Comp additionally writes its argument count before
// the children. A code is well formed iff the stream parses as exactly one
// tree; every other integer decodes to always_diverge().
//
// Self-delimiting form of v: with w = v + 1 and L = bit_length(w), write
// L - 1 zeros, a one, then the low L - 1 bits of w (2L - 1 bits in total).
// The length of a code grows additively with the tree, so codes can be
// embedded in other programs as constants and spliced arithmetically.

#include <string>

#include "canimm/program.hpp"

namespace canimm::machine {

ProgramCode encode(const Tree& tree);
ProgramCode encode(const Node& tree);
Tree decode(const ProgramCode& code);

// True iff the code parses (decode(encode(t)) == t for every tree t).
bool well_formed(const ProgramCode& code);

struct SelfDelimited {
  Natural value;
  std::uint64_t length;
};
SelfDelimited self_delimiting(const Natural& v);

// Code of bind(c, f) computed from the code of f without decoding it.
ProgramCode bind_code(const Natural& c, const ProgramCode& f);

// Total-tier program x -> code of bind(x, f): the syntactic s-m-n map for a
// fixed f, evaluated inside the machine.
Tree bind_code_program(const ProgramCode& f);

// One instruction per line, indented by depth.
std::string disassemble(const Tree& tree);
std::string disassemble(const ProgramCode& code);

}  // namespace canimm::machine
