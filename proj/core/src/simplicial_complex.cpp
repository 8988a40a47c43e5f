#include "pathboltz/simplicial_complex.hpp"

#include <algorithm>
#include <string>

#include "pathboltz/errors.hpp"

namespace pathboltz {

namespace {

bool is_subset(const Simplex& a, const Simplex& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

void SimplicialComplex::insert_with_faces(Simplex simplex) {
  std::sort(simplex.begin(), simplex.end());
  if (std::adjacent_find(simplex.begin(), simplex.end()) != simplex.end()) {
    throw ValidationError("SimplicialComplex: simplex has repeated vertices");
  }
  if (simplex.empty()) throw ValidationError("SimplicialComplex: empty simplex");

  // Enumerate all nonempty subsets; simplices stay small (k-local terms).
  const std::size_t n = simplex.size();
  if (n > 24) throw ValidationError("SimplicialComplex: simplex too large");
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) face.push_back(simplex[i]);
    }
    simplices_.insert(std::move(face));
  }
}

std::size_t SimplicialComplex::count_of_rank(int rank) const {
  std::size_t count = 0;
  for (const auto& s : simplices_) {
    if (static_cast<int>(s.size()) - 1 == rank) ++count;
  }
  return count;
}

int SimplicialComplex::max_rank() const {
  int r = -1;
  for (const auto& s : simplices_) r = std::max(r, static_cast<int>(s.size()) - 1);
  return r;
}

std::vector<Simplex> SimplicialComplex::maximal() const {
  std::vector<Simplex> result;
  for (const auto& s : simplices_) {
    bool has_superset = false;
    for (const auto& t : simplices_) {
      if (t.size() > s.size() && is_subset(s, t)) {
        has_superset = true;
        break;
      }
    }
    if (!has_superset) result.push_back(s);
  }
  return result;
}

MultiplicityMode multiplicity_mode_from_string(const std::string& token) {
  if (token == "paper" || token == "containment") return MultiplicityMode::Containment;
  if (token == "moebius") return MultiplicityMode::Moebius;
  throw ValidationError("unknown multiplicity mode '" + token + "' (expected paper|moebius)");
}

std::map<Simplex, long long> multiplicities(const SimplicialComplex& complex,
                                            MultiplicityMode mode) {
  std::map<Simplex, long long> result;
  const auto& all = complex.simplices();

  if (mode == MultiplicityMode::Containment) {
    for (const auto& s : all) {
      long long count = 0;
      for (const auto& t : all) {
        if (t.size() >= s.size() && is_subset(s, t)) ++count;
      }
      result[s] = count;
    }
    return result;
  }

  // Moebius: visit by decreasing size so all proper supersets are resolved.
  std::vector<const Simplex*> order;
  order.reserve(all.size());
  for (const auto& s : all) order.push_back(&s);
  std::sort(order.begin(), order.end(),
            [](const Simplex* a, const Simplex* b) { return a->size() > b->size(); });
  for (const Simplex* s : order) {
    long long c = 1;
    for (const auto& t : all) {
      if (t.size() > s->size() && is_subset(*s, t)) c -= result.at(t);
    }
    result[*s] = c;
  }
  return result;
}

}  // namespace pathboltz
