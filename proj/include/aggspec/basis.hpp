#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace aggspec {

// One permutation-symmetric occupation configuration of the single-excitation
// sector: ground_occ[n] molecules sit in ground vibronic level n, and the one
// excited molecule sits in excited vibronic level m.
struct OccState {
    std::vector<int> ground_occ;  // size M_g+1, entries >= 0, sum == N
    int excited_level = 0;        // m in [0, M_e]

    bool operator==(const OccState&) const = default;
    // Lexicographic in (ground_occ, excited_level); the enumeration order.
    bool operator<(const OccState& o) const;
};

// Debug dump: "[n0 n1 ... | m]".
std::string to_string(const OccState& s);

// The k-sector: all states with exactly k ground molecules vibrationally
// excited (sum of ground_occ[1..M_g] == k). Deterministic lexicographic
// ordering; immutable after enumeration.
struct ManifoldBasis {
    int k = 0;
    int n_ground = 0;  // N
    std::vector<OccState> states;

    int size() const { return static_cast<int>(states.size()); }
    // Position of state in states; throws std::out_of_range when the state
    // does not belong to this sector.
    int locate(const OccState& state) const;
    std::string dump() const;  // one state per line
};

// (M_e+1) * C(k+M_g-1, M_g-1): number of k-sector states when k <= N.
// Rejects M_g == 0 with k > 0 and negative arguments; overflow-guarded.
std::int64_t manifold_dimension(int m_g, int m_e, int k);

// All states with k vibrationally excited ground molecules. Accepts
// 0 <= k <= N*M_g; sectors with k > N hold no states and come back empty.
ManifoldBasis enumerate_manifold(int n_ground, int m_g, int m_e, int k);

}  // namespace aggspec
