#pragma once

#include <ostream>

#include "maxlin/maxlin.hpp"

namespace maxlin::testing {

// Diamond 1 -> {2, 3} -> 4.
inline Dag diamond() { return build_dag(4, {{1, 2}, {1, 3}, {2, 4}, {3, 4}}); }

// c21 = 0.5, c31 = 0.8, c42 = 0.6, c43 = 0.9.
inline EdgeWeights diamond_weights() { return {{{1, 2}, 0.5}, {{1, 3}, 0.8}, {{2, 4}, 0.6}, {{3, 4}, 0.9}}; }

inline MaxLinearModel diamond_model() { return new_model(diamond(), diamond_weights()); }

// Diamond with the tail 4 -> 5.
inline Dag diamond_tail() { return build_dag(5, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 5}}); }

// 1 -> 3 <- 2, 3 -> 5, 4 -> 6 <- 5.
inline Dag fig1_polytree() { return build_dag(6, {{1, 3}, {2, 3}, {3, 5}, {4, 6}, {5, 6}}); }

// Diamond with 4 -> 6 and 2 -> 5.
inline Dag markov_example() { return build_dag(6, {{1, 2}, {1, 3}, {2, 4}, {3, 4}, {4, 6}, {2, 5}}); }

inline Dag chain3() { return build_dag(3, {{1, 2}, {2, 3}}); }
inline Dag reversed_chain3() { return build_dag(3, {{3, 2}, {2, 1}}); }
inline Dag fork3() { return build_dag(3, {{2, 1}, {2, 3}}); }
inline Dag collider3() { return build_dag(3, {{1, 2}, {3, 2}}); }

}  // namespace maxlin::testing

namespace maxlin {

// gtest finds these by ADL.
inline void PrintTo(const VertexSet& s, std::ostream* os) {
  *os << '{';
  for (auto it = s.begin(); it != s.end(); ++it) *os << (it == s.begin() ? "" : ",") << *it;
  *os << '}';
}

inline void PrintTo(const IndependenceStatement& st, std::ostream* os) {
  PrintTo(st.a, os);
  *os << " _||_ ";
  PrintTo(st.b, os);
  *os << " | ";
  PrintTo(st.s, os);
  *os << (st.holds ? " (holds)" : " (fails)");
}

}  // namespace maxlin
