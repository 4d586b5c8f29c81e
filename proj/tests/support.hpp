#pragma once

#include <complex>
#include <random>
#include <vector>

#include "beamalign/truncate.hpp"
#include "oracles.hpp"

namespace testing_support {

inline beamalign::SparsePolynomial to_sparse(const oracle::Dense& d, beamalign::BeamAngles center = {}) {
  std::vector<beamalign::Term> terms;
  for (std::size_t a = 0; a < d.c.size(); ++a)
    for (std::size_t b = 0; b < d.c[a].size(); ++b)
      terms.push_back({{static_cast<int>(a), static_cast<int>(b)}, d.c[a][b]});
  return beamalign::SparsePolynomial(std::move(terms), center);
}

// Standard normal coefficients on the full a x b rectangle.
inline oracle::Dense random_dense(int da, int db, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  auto d = oracle::dense_zero(da, db);
  for (auto& row : d.c)
    for (auto& c : row) c = n01(rng);
  return d;
}

inline double distance(std::complex<double> a1, std::complex<double> b1, std::complex<double> a2,
                       std::complex<double> b2) {
  return std::sqrt(std::norm(a1 - a2) + std::norm(b1 - b2));
}

}  // namespace testing_support
