#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace pathboltz {

/// Simplex = sorted list of distinct vertex ids; rank = size - 1.
using Simplex = std::vector<int>;

/// Finite simplicial complex, closed under taking faces.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Inserts the simplex and every face of it.
  void insert_with_faces(Simplex simplex);

  bool contains(const Simplex& simplex) const { return simplices_.count(simplex) > 0; }
  const std::set<Simplex>& simplices() const { return simplices_; }
  std::size_t count_of_rank(int rank) const;
  int max_rank() const;
  /// Simplices with no proper superset in the complex.
  std::vector<Simplex> maximal() const;

 private:
  std::set<Simplex> simplices_;
};

enum class MultiplicityMode {
  /// Number of simplices of equal or higher rank that contain the cluster,
  /// the cluster itself included.
  Containment,
  /// Recursive overcounting numbers: c(maximal) = 1,
  /// c(face) = 1 - sum of c over proper supersets. May be zero or negative
  /// on faces; exactly compensates overcounting on junction trees.
  Moebius,
};

MultiplicityMode multiplicity_mode_from_string(const std::string& token);

std::map<Simplex, long long> multiplicities(const SimplicialComplex& complex,
                                            MultiplicityMode mode);

}  // namespace pathboltz
