#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beamalign/pipeline.hpp"
#include "beamalign/series.hpp"
#include "beamalign/truncate.hpp"

namespace beamalign {

/// Shortest text that reads back to the same double ("%.17g"); NaN as "nan".
std::string format_double(double v);

/// `deg_rx,deg_tx,coeff_real,coeff_imag`, one row per stored monomial in MonomialOrder.
void write_series_csv(std::ostream& os, const TruncatedSeries& s);

/// `deg_rx,deg_tx,coeff`, one row per term.
void write_polynomial_csv(std::ostream& os, const SparsePolynomial& p);
SparsePolynomial read_polynomial_csv(std::istream& is, BeamAngles center = {});

/// A solver test system: two `deg_rx,deg_tx,coeff` blocks and an optional block of
/// expected roots `re_rx,im_rx,re_tx,im_tx`, separated by blank lines. Lines
/// starting with '#' and non-numeric header lines are ignored.
struct SolverFixture {
  SparsePolynomial p1;
  SparsePolynomial p2;
  std::vector<std::pair<std::complex<double>, std::complex<double>>> roots;
};

SolverFixture read_fixture(std::istream& is);
SolverFixture read_fixture(const std::filesystem::path& path);
void write_fixture(std::ostream& os, const SolverFixture& fx);

inline constexpr const char* kResultsHeader =
    "eps1,eps2,eta,delta,objective,r_est,r_exh,abs_diff,n_real_roots,status,wall_ms";

void write_results_csv(std::ostream& os, const std::vector<ExperimentRecord>& records);

/// Two polylines (objective and |R_e - R_x|) over the pair index.
void write_sweep_svg(std::ostream& os, const std::vector<ExperimentRecord>& records);

}  // namespace beamalign
