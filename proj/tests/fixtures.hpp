#pragma once

// Worked 4-bit instance and small literal constructions used across the suites.

#include "rbdecomp/perm.hpp"

namespace fx {

using rbd::parse_cycle_string;
using rbd::Perm;

inline Perm sigma() { return parse_cycle_string("(1001,1100,0101)(1110,0110,0111,1111)(1010,0010,0011,1011)", 4); }
inline Perm pi1() { return parse_cycle_string("(1110,0111)(1010,0011)", 4); }
inline Perm pi2() { return parse_cycle_string("(0100,0101)(0000,0001)", 4); }
inline Perm pi3() { return parse_cycle_string("(0100,1110)(0000,1010)(1101,0110)(1001,0010)", 4); }
inline Perm pi4() { return parse_cycle_string("(1000,1010)(0000,0010)", 4); }
inline Perm pi5() { return parse_cycle_string("(1100,0100)(1000,0000)(1101,0110)(1001,0010)", 4); }
inline Perm pi123() { return parse_cycle_string("(0000,0011,1010,0001)(0100,0111,1110,0101)(0010,1001)(0110,1101)", 4); }
inline Perm sigma_ctl() {
  return parse_cycle_string("(0000,0001)(0010,0011)(0100,0101)(0110,0111)(1000,1100,1111,1110,1001,1011,1010)", 4);
}
inline Perm f() { return parse_cycle_string("(000,001)(010,011)(100,101)(110,111)", 3); }
inline Perm g() { return parse_cycle_string("(000,100,111,110,001,011,010)", 3); }
inline Perm finv_g() { return parse_cycle_string("(000,101,100,110)(001,010)", 3); }
inline Perm s1() { return parse_cycle_string("(000,011)(100,111)", 3); }
inline Perm s2() { return parse_cycle_string("(010,110)(000,100)", 3); }
inline Perm h() { return parse_cycle_string("(101,111)(001,010,110,011)", 3); }
inline Perm pi6() {
  return parse_cycle_string("(0000,0001,0010)(0011,0111,0100,0101,0110)(1000,1001,1010)(1011,1111,1100,1101,1110)", 4);
}
inline Perm pi7() { return parse_cycle_string("(1000,1011)(1100,1111)", 4); }
inline Perm pi8() { return parse_cycle_string("(1010,1110)(1000,1100)", 4); }
inline Perm pi9() { return parse_cycle_string("(0101,0111)(0001,0010,0110,0011)(1101,1111)(1001,1010,1110,1011)", 4); }

// region example for the two-cycle pack on dims (1, 2)
inline Perm rpack_tau() { return parse_cycle_string("(1100,0100)(1000,0000)", 4); }
inline Perm rpack_pi() { return parse_cycle_string("(1100,1101,1110,1010)(1000,1001)(0100,0101,0110,0010)(0000,0001)", 4); }
inline const char* rpack_region[] = {"0000", "0001", "0010", "0100", "0101", "0110",
                                     "1000", "1001", "1010", "1100", "1101", "1110"};

// concurrently odd block written as four concurrently even ones, dims (1, 2, 3)
inline Perm odd4_pi() { return parse_cycle_string("(001,011)(101,111)", 3); }
inline Perm odd4_t1() { return parse_cycle_string("(010,100,110)(011,101,111)", 3); }
inline Perm odd4_t2() { return parse_cycle_string("(001,100,101)(011,110,111)", 3); }
inline Perm odd4_t3() { return parse_cycle_string("(001,010,011)(101,110,111)", 3); }
inline Perm odd4_t4() { return parse_cycle_string("(001,101,100)(011,111,110)", 3); }

// base of the tightness construction
inline Perm tight3() { return parse_cycle_string("(000,001)(101,111)(010,110)", 3); }

}  // namespace fx
