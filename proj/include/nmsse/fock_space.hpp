// fock_space.hpp — truncated occupation-number bookkeeping for the hierarchy

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace nmsse {

enum class Truncation { Hypercube, Triangular };

// Enumerates occupation vectors n = (n_1 ... n_K) with n_k <= cap_k and, for
// the triangular rule, sum_k n_k <= l_total. The zero vector has offset 0.
class FockSpace {
public:
    static FockSpace hypercube(const std::vector<int>& caps);
    static FockSpace triangular(int num_modes, int l_total);

    int num_modes() const { return num_modes_; }
    int size() const { return static_cast<int>(states_.size()); }
    Truncation truncation() const { return truncation_; }
    int depth_cap() const { return l_total_; }
    const std::vector<int>& caps() const { return caps_; }

    const std::vector<int>& state(int offset) const { return states_[offset]; }

    // offset of an occupation vector, -1 if outside the truncated space
    int find(const std::vector<int>& n) const;

    // offset after n -> n + e_k (delta = +1) or n - e_k (delta = -1); -1 if
    // the neighbor is truncated away
    int neighbor(int offset, int mode, int delta) const;

    // offset after n -> n - e_k + e_kp; -1 if truncated away
    int shift(int offset, int mode_down, int mode_up) const;

private:
    FockSpace() = default;
    void enumerate();
    std::uint64_t key(const std::vector<int>& n) const;

    int num_modes_{0};
    std::vector<int> caps_;
    Truncation truncation_{Truncation::Hypercube};
    int l_total_{0};
    std::vector<std::vector<int>> states_;
    std::unordered_map<std::uint64_t, int> index_;
};

}  // namespace nmsse
