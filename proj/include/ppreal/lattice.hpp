#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppr {

/// Occupation configuration on a finite domain, one bit per site.
using Config = std::uint32_t;

inline int particle_count(Config eta) { return std::popcount(eta); }

enum class Boundary { periodic, free };

/// Finite box or periodic torus in Z^d.  Sites are indexed 0..size()-1 in
/// row-major order; displacement uses the minimal image under periodic
/// boundary conditions and the raw difference otherwise.
class LatticeDomain {
public:
  LatticeDomain(std::vector<int> extents, Boundary boundary)
      : extents_(std::move(extents)), boundary_(boundary) {
    if (extents_.empty()) throw std::invalid_argument("domain needs at least one dimension");
    for (int e : extents_)
      if (e <= 0) throw std::invalid_argument("extents must be positive");
    size_ = 1;
    for (int e : extents_) {
      if (size_ > (1 << 28) / e) throw std::invalid_argument("domain too large");
      size_ *= e;
    }
  }

  static LatticeDomain ring(int length) {
    return LatticeDomain({length}, Boundary::periodic);
  }
  static LatticeDomain segment(int length) {
    return LatticeDomain({length}, Boundary::free);
  }

  int dimension() const { return static_cast<int>(extents_.size()); }
  const std::vector<int>& extents() const { return extents_; }
  Boundary boundary() const { return boundary_; }
  int size() const { return size_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }

  std::vector<int> coordinates(int site) const {
    check_site(site);
    std::vector<int> c(extents_.size());
    for (int k = dimension() - 1; k >= 0; --k) {
      c[k] = site % extents_[k];
      site /= extents_[k];
    }
    return c;
  }

  int site(const std::vector<int>& coords) const {
    if (static_cast<int>(coords.size()) != dimension())
      throw std::invalid_argument("coordinate arity mismatch");
    int s = 0;
    for (int k = 0; k < dimension(); ++k) {
      int c = coords[k];
      if (periodic()) {
        c %= extents_[k];
        if (c < 0) c += extents_[k];
      } else if (c < 0 || c >= extents_[k]) {
        throw std::out_of_range("coordinate outside free domain");
      }
      s = s * extents_[k] + c;
    }
    return s;
  }

  /// Displacement y - x; per-axis minimal image on the torus.
  std::vector<int> displacement(int x, int y) const {
    auto cx = coordinates(x), cy = coordinates(y);
    std::vector<int> d(dimension());
    for (int k = 0; k < dimension(); ++k) {
      int dk = cy[k] - cx[k];
      if (periodic()) {
        int L = extents_[k];
        dk %= L;
        if (dk < 0) dk += L;
        if (2 * dk > L) dk -= L;
      }
      d[k] = dk;
    }
    return d;
  }

  /// Euclidean distance between sites under the domain's metric.
  double distance(int x, int y) const {
    auto d = displacement(x, y);
    double s = 0;
    for (int dk : d) s += static_cast<double>(dk) * dk;
    return std::sqrt(s);
  }

  /// Guard for operations that enumerate all 2^|Lambda| configurations.
  void require_enumerable(int cap = 24) const {
    if (size_ > cap)
      throw std::domain_error("domain has " + std::to_string(size_) +
                              " sites; configuration enumeration capped at " +
                              std::to_string(cap));
  }

private:
  void check_site(int s) const {
    if (s < 0 || s >= size_) throw std::out_of_range("site index out of range");
  }

  std::vector<int> extents_;
  Boundary boundary_;
  int size_;
};

}  // namespace ppr
