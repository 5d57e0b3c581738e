#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "aggspec/basis.hpp"

using namespace aggspec;

namespace {

// Independent count of all symmetric single-excitation states: distribute N
// molecules over m_g+1 ground levels, times m_e+1 exciton levels.
std::int64_t stars_and_bars_count(int n, int slots) {
    if (slots == 1) return 1;
    std::int64_t total = 0;
    for (int v = 0; v <= n; ++v) total += stars_and_bars_count(n - v, slots - 1);
    return total;
}

}  // namespace

TEST_CASE("single-level ground manifolds hold one state per sector") {
    const ManifoldBasis k0 = enumerate_manifold(5, 1, 0, 0);
    REQUIRE(k0.size() == 1);
    CHECK(to_string(k0.states[0]) == "[5 0 | 0]");

    const ManifoldBasis k2 = enumerate_manifold(5, 1, 0, 2);
    REQUIRE(k2.size() == 1);
    CHECK(to_string(k2.states[0]) == "[3 2 | 0]");
    CHECK(k2.dump() == "[3 2 | 0]\n");
}

TEST_CASE("sector sizes follow the composition count") {
    CHECK(enumerate_manifold(4, 2, 1, 1).size() == 4);
    CHECK(manifold_dimension(1, 0, 0) == 1);
    CHECK(manifold_dimension(1, 0, 7) == 1);
    CHECK(manifold_dimension(2, 2, 0) == 3);
    CHECK(manifold_dimension(3, 2, 2) == 18);

    for (int n = 1; n <= 6; ++n)
        for (int m_g = 1; m_g <= 3; ++m_g)
            for (int m_e = 0; m_e <= 2; ++m_e)
                for (int k = 0; k <= std::min(n, 4); ++k)
                    CHECK(enumerate_manifold(n, m_g, m_e, k).size() ==
                          manifold_dimension(m_g, m_e, k));

    // Sectors beyond the molecule count hold no states.
    CHECK(enumerate_manifold(2, 3, 1, 4).size() == 0);
    CHECK(enumerate_manifold(1, 2, 0, 2).size() == 0);
}

TEST_CASE("sector index bounds are enforced") {
    CHECK_THROWS_AS(enumerate_manifold(3, 1, 0, -1), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_manifold(3, 1, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_manifold(3, 0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(manifold_dimension(0, 1, 1), std::invalid_argument);
    CHECK(manifold_dimension(0, 1, 0) == 2);
    CHECK(enumerate_manifold(3, 0, 1, 0).size() == 2);
}

TEST_CASE("locate inverts enumeration") {
    const ManifoldBasis basis = enumerate_manifold(4, 2, 1, 2);
    REQUIRE(basis.size() == manifold_dimension(2, 1, 2));
    for (int i = 0; i < basis.size(); ++i) CHECK(basis.locate(basis.states[i]) == i);
    CHECK(basis.locate(basis.states[0]) == 0);

    OccState wrong;
    wrong.ground_occ = {4, 0, 0};  // k = 0 state against the k = 2 sector
    wrong.excited_level = 0;
    CHECK_THROWS_AS(basis.locate(wrong), std::out_of_range);
}

TEST_CASE("ordering is lexicographic and deterministic") {
    const ManifoldBasis basis = enumerate_manifold(3, 2, 1, 2);
    REQUIRE(basis.size() == 6);
    CHECK(to_string(basis.states[0]) == "[1 0 2 | 0]");
    CHECK(to_string(basis.states[1]) == "[1 0 2 | 1]");
    CHECK(to_string(basis.states[2]) == "[1 1 1 | 0]");
    CHECK(to_string(basis.states[3]) == "[1 1 1 | 1]");
    CHECK(to_string(basis.states[4]) == "[1 2 0 | 0]");
    CHECK(to_string(basis.states[5]) == "[1 2 0 | 1]");
    for (int i = 0; i + 1 < basis.size(); ++i) CHECK(basis.states[i] < basis.states[i + 1]);
}

TEST_CASE("sector dimensions sum to the full symmetric space") {
    for (const auto& [n, m_g, m_e] : std::vector<std::tuple<int, int, int>>{
             {5, 2, 1}, {4, 3, 2}, {6, 1, 0}}) {
        std::int64_t total = 0;
        for (int k = 0; k <= n * m_g; ++k) total += enumerate_manifold(n, m_g, m_e, k).size();
        CHECK(total == (m_e + 1) * stars_and_bars_count(n, m_g + 1));
    }
}
