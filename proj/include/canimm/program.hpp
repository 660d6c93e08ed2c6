#pragma once

// Syntax trees of the two-tier machine.
//
// Total tier: Const, Proj, Succ, Comp, PrimRec, Bind, BoundedMu and the
// arithmetic primitives (Pair .. BitOr) plus Clocked, the step-bounded
// universal simulator. Every total-tier program halts on every input.
// Partial tier adds Mu (unbounded search), Query (oracle bit) and Univ
// (unbounded universal application).
//
// Argument convention: a program receives a finite argument vector; any
// projection or primitive that reads past its end reads 0.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

#include "canimm/natural.hpp"

namespace canimm::machine {

enum class Op : std::uint8_t {
  Const = 0,   // payload c:              x -> c
  Proj,        // payload i:              x -> x_i
  Succ,        //                         x0 + 1
  Comp,        // g, h_1..h_k:            g(h_1(x), .., h_k(x))
  PrimRec,     // base, step:             R(0,y) = base(y); R(n+1,y) = step(n, R(n,y), y)
  Bind,        // payload c, f:           f(c, x)
  BoundedMu,   // bound, pred:            least z < bound(x) with pred(z, x) = 0, else bound(x)
  Pair,        //                         <x0, x1>
  Left,        //                         first component of x0
  Right,       //                         second component of x0
  Add,         //                         x0 + x1
  Monus,       //                         max(x0 - x1, 0)
  Mul,         //                         x0 * x1
  Div,         //                         floor(x0 / x1), 0 when x1 = 0
  Pow2,        //                         2^x0
  Bit,         //                         bit x1 of x0
  Msb,         //                         floor(log2 x0), 0 for x0 = 0
  BitOr,       //                         x0 | x1
  Clocked,     //                         run code x0 on x2 with oracle string x1 for at most x3 steps;
               //                         value v+1 if it converged to v, else 0
  Mu,          // f:                      least z with f(z, x) = 0
  Query,       //                         oracle bit at position x0
  Univ,        //                         {x0}(x1, x2, ..)
};

inline constexpr unsigned kOpCount = 22;
inline constexpr unsigned kOpBits = 5;

const char* op_name(Op op);

struct Node;
using Tree = std::shared_ptr<const Node>;

struct Node {
  Op op;
  Natural payload;          // Const value, Proj index, Bind constant
  std::vector<Tree> kids;
  bool total_tier = true;   // no Mu, Query or Univ anywhere below
  bool oracle_free = true;  // no Query or Univ anywhere below
  std::uint64_t size = 1;   // node count
};

// Goedel number of a syntax tree. Every nonnegative integer is a code; codes
// that do not parse decode to the canonical always-diverging program.
struct ProgramCode {
  Natural value;

  ProgramCode() = default;
  explicit ProgramCode(Natural v) : value(std::move(v)) {}

  friend bool operator==(const ProgramCode&, const ProgramCode&) = default;
  friend auto operator<=>(const ProgramCode& a, const ProgramCode& b) {
    const int c = a.value.compare(b.value);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
};

// Raw node constructors.
Tree constant(Natural c);
Tree proj(std::uint64_t index);
Tree primitive(Op op);
Tree comp(Tree g, std::vector<Tree> hs);
Tree primrec(Tree base, Tree step);
Tree bind(Natural c, Tree f);
Tree bounded_mu(Tree bound, Tree pred);
Tree mu(Tree f);

// The canonical always-diverging program: mu z. 1 = 0.
Tree always_diverge();

bool trees_equal(const Node& a, const Node& b);

// Expression helpers. Each takes sub-programs over the same argument vector
// and returns the program computing the combined value.
namespace dsl {

Tree arg(std::uint64_t i);
Tree lit(Natural c);
Tree call(Tree f, std::vector<Tree> args);

Tree succ(Tree a);
Tree add(Tree a, Tree b);
Tree monus(Tree a, Tree b);
Tree mul(Tree a, Tree b);
Tree div(Tree a, Tree b);
Tree mod(Tree a, Tree b);
Tree pow2(Tree a);
Tree bit(Tree x, Tree n);
Tree msb(Tree a);
Tree bit_or(Tree a, Tree b);
Tree pair_of(Tree a, Tree b);
Tree left(Tree p);
Tree right(Tree p);
Tree query(Tree position);
Tree univ(Tree code, std::vector<Tree> args);
Tree clocked(Tree code, Tree oracle, Tree input, Tree steps);

Tree max_of(Tree a, Tree b);
Tree min_of(Tree a, Tree b);
Tree sg(Tree a);                          // 1 if a > 0 else 0
Tree is_zero(Tree a);                     // 1 if a == 0 else 0
Tree eq(Tree a, Tree b);
Tree lt(Tree a, Tree b);                  // 1 if a < b
Tree select(Tree flag, Tree a, Tree b);   // flag in {0,1}: a if 1, b if 0 (both evaluated)
Tree bit_length_of(Tree a);               // 0 for 0, msb + 1 otherwise

// body sees (value(x), x_0, .., x_{arity-1}).
Tree let_in(std::uint64_t arity, Tree value, Tree body);

// Halts with value 0 when flag(x) = 1, diverges when flag(x) = 0.
Tree halt_if(Tree flag);

}  // namespace dsl

}  // namespace canimm::machine
