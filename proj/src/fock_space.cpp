#include "nmsse/fock_space.hpp"

#include <numeric>
#include <stdexcept>

namespace nmsse {

FockSpace FockSpace::hypercube(const std::vector<int>& caps) {
    if (caps.empty()) throw std::invalid_argument("need at least one mode");
    for (int c : caps)
        if (c < 0) throw std::invalid_argument("occupation caps must be non-negative");
    FockSpace fs;
    fs.num_modes_ = static_cast<int>(caps.size());
    fs.caps_ = caps;
    fs.truncation_ = Truncation::Hypercube;
    fs.l_total_ = std::accumulate(caps.begin(), caps.end(), 0);
    fs.enumerate();
    return fs;
}

FockSpace FockSpace::triangular(int num_modes, int l_total) {
    if (num_modes < 1) throw std::invalid_argument("need at least one mode");
    if (l_total < 0) throw std::invalid_argument("depth cap must be non-negative");
    FockSpace fs;
    fs.num_modes_ = num_modes;
    fs.caps_.assign(num_modes, l_total);
    fs.truncation_ = Truncation::Triangular;
    fs.l_total_ = l_total;
    fs.enumerate();
    return fs;
}

void FockSpace::enumerate() {
    std::vector<int> n(num_modes_, 0);
    // lexicographic with the last mode fastest; the zero vector comes first
    while (true) {
        states_.push_back(n);
        index_.emplace(key(n), static_cast<int>(states_.size()) - 1);
        int k = num_modes_ - 1;
        while (k >= 0) {
            ++n[k];
            const int total = std::accumulate(n.begin(), n.end(), 0);
            const bool ok = n[k] <= caps_[k] &&
                            (truncation_ == Truncation::Hypercube || total <= l_total_);
            if (ok) break;
            n[k] = 0;
            --k;
        }
        if (k < 0) break;
    }
}

std::uint64_t FockSpace::key(const std::vector<int>& n) const {
    std::uint64_t k = 0;
    for (int i = 0; i < num_modes_; ++i) {
        k = k * static_cast<std::uint64_t>(caps_[i] + 2) + static_cast<std::uint64_t>(n[i]);
    }
    return k;
}

int FockSpace::find(const std::vector<int>& n) const {
    if (static_cast<int>(n.size()) != num_modes_) return -1;
    int total = 0;
    for (int i = 0; i < num_modes_; ++i) {
        if (n[i] < 0 || n[i] > caps_[i]) return -1;
        total += n[i];
    }
    if (truncation_ == Truncation::Triangular && total > l_total_) return -1;
    const auto it = index_.find(key(n));
    return it == index_.end() ? -1 : it->second;
}

int FockSpace::neighbor(int offset, int mode, int delta) const {
    std::vector<int> n = states_[offset];
    n[mode] += delta;
    return find(n);
}

int FockSpace::shift(int offset, int mode_down, int mode_up) const {
    std::vector<int> n = states_[offset];
    n[mode_down] -= 1;
    n[mode_up] += 1;
    return find(n);
}

}  // namespace nmsse
