#include "aggspec/basis.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace aggspec {

bool OccState::operator<(const OccState& o) const {
    if (ground_occ != o.ground_occ)
        return std::lexicographical_compare(ground_occ.begin(), ground_occ.end(),
                                            o.ground_occ.begin(), o.ground_occ.end());
    return excited_level < o.excited_level;
}

std::string to_string(const OccState& s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.ground_occ.size(); ++i) {
        if (i) os << ' ';
        os << s.ground_occ[i];
    }
    os << " | " << s.excited_level << ']';
    return os.str();
}

int ManifoldBasis::locate(const OccState& state) const {
    const auto it = std::lower_bound(states.begin(), states.end(), state);
    if (it == states.end() || !(*it == state))
        throw std::out_of_range("state not in this k-sector: " + to_string(state));
    return static_cast<int>(it - states.begin());
}

std::string ManifoldBasis::dump() const {
    std::string out;
    for (const auto& s : states) {
        out += to_string(s);
        out += '\n';
    }
    return out;
}

std::int64_t manifold_dimension(int m_g, int m_e, int k) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    if (m_e < 0) throw std::invalid_argument("m_e must be >= 0");
    if (m_g < 0) throw std::invalid_argument("m_g must be >= 0");
    if (m_g == 0) {
        if (k > 0) throw std::invalid_argument("k > 0 requires m_g >= 1");
        return m_e + 1;
    }
    // C(k + m_g - 1, m_g - 1), overflow-guarded.
    std::int64_t c = 1;
    for (int i = 1; i <= m_g - 1; ++i) {
        if (c > std::numeric_limits<std::int64_t>::max() / (k + i))
            throw std::invalid_argument("manifold dimension overflows 64 bits");
        c = c * (k + i) / i;
    }
    if (c > std::numeric_limits<std::int64_t>::max() / (m_e + 1))
        throw std::invalid_argument("manifold dimension overflows 64 bits");
    return c * (m_e + 1);
}

namespace {

void compositions(int remaining, int slot, std::vector<int>& occ, int m_e,
                  std::vector<OccState>& out) {
    const int last = static_cast<int>(occ.size()) - 1;
    if (slot == last) {
        occ[slot] = remaining;
        for (int m = 0; m <= m_e; ++m) out.push_back(OccState{occ, m});
        occ[slot] = 0;
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        occ[slot] = v;
        compositions(remaining - v, slot + 1, occ, m_e, out);
    }
    occ[slot] = 0;
}

}  // namespace

ManifoldBasis enumerate_manifold(int n_ground, int m_g, int m_e, int k) {
    if (n_ground < 1) throw std::invalid_argument("n_ground must be >= 1");
    if (m_g < 0 || m_e < 0) throw std::invalid_argument("level counts must be >= 0");
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    if (k > n_ground * m_g)
        throw std::invalid_argument("k exceeds the largest sector index n_ground * m_g");

    ManifoldBasis basis;
    basis.k = k;
    basis.n_ground = n_ground;
    if (k > n_ground) return basis;  // fewer molecules than excitations: empty

    std::vector<int> occ(m_g + 1, 0);
    occ[0] = n_ground - k;
    if (m_g == 0) {
        for (int m = 0; m <= m_e; ++m) basis.states.push_back(OccState{occ, m});
        return basis;
    }
    // Distribute the k excited molecules over levels 1..m_g, ascending
    // lexicographic order in the occupation vector.
    std::vector<int> tail(m_g, 0);
    std::vector<OccState> raw;
    compositions(k, 0, tail, m_e, raw);
    basis.states.reserve(raw.size());
    for (auto& s : raw) {
        OccState full;
        full.ground_occ.reserve(m_g + 1);
        full.ground_occ.push_back(n_ground - k);
        full.ground_occ.insert(full.ground_occ.end(), s.ground_occ.begin(), s.ground_occ.end());
        full.excited_level = s.excited_level;
        basis.states.push_back(std::move(full));
    }
    return basis;
}

}  // namespace aggspec
