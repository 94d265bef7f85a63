#ifndef CRYSTAL_CONFIGURATION_HPP
#define CRYSTAL_CONFIGURATION_HPP

#include <cstdint>
#include <vector>

namespace crystal {

/// Exclusion-process state: one bit per vertex of X_N, with a cached
/// particle count.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(long long num_vertices)
      : bits_(num_vertices, 0), count_(0) {}

  long long size() const { return static_cast<long long>(bits_.size()); }
  uint8_t operator[](long long v) const { return bits_[v]; }
  long long particle_count() const { return count_; }

  void set(long long v, uint8_t value) {
    count_ += static_cast<long long>(value) - bits_[v];
    bits_[v] = value;
  }

  /// Exchanges occupancies across an edge (an involution).
  void exchange(long long a, long long b) { std::swap(bits_[a], bits_[b]); }

  bool operator==(const Configuration& o) const { return bits_ == o.bits_; }

  const std::vector<uint8_t>& bits() const { return bits_; }

 private:
  std::vector<uint8_t> bits_;
  long long count_ = 0;
};

}  // namespace crystal

#endif
