#include <cmath>
#include <initializer_list>

#include "topowalk/continuous.hpp"
#include "topowalk/errors.hpp"

namespace topowalk {

void ContinuousRates::validate() const {
  for (double r : {gamma, gamma1, gamma2})
    if (!std::isfinite(r)) throw DomainError("rates must be finite");
  if (gamma == 0.0 && gamma1 == 0.0 && gamma2 == 0.0)
    throw DomainError("at least one rate must be nonzero");
}

double ContinuousRates::max_rate() const {
  return std::max({std::abs(gamma), std::abs(gamma1), std::abs(gamma2)});
}

namespace {

// (target component, source component, source offset, coefficient)
struct Row {
  int target;
  int source;
  int offset;
  double coef;
};

void put(Generator& g, int x, std::initializer_list<Row> rows) {
  const auto& lat = g.lattice();
  for (const Row& r : rows) {
    if (lat.boundary == Boundary::open && !lat.contains(x + r.offset)) continue;
    g.add(x, r.target, r.source, r.offset, r.coef);
  }
}

void rows_simple(Generator& g, int x, SimplePhase phase, double gm) {
  if (phase == SimplePhase::theta_positive)
    put(g, x, {{0, 1, 0, gm}, {0, 1, -2, -gm}, {1, 0, 0, -gm}, {1, 0, 2, gm}});
  else
    put(g, x, {{0, 1, 0, gm}, {0, 1, 2, -gm}, {1, 0, 0, -gm}, {1, 0, -2, gm}});
}

void rows_split(Generator& g, int x, PhaseName phase, double g1, double g2) {
  switch (phase) {
    case PhaseName::I:
    case PhaseName::II:
      put(g, x, {{0, 1, 0, -2 * g1}, {0, 1, -1, -g2}, {0, 1, 1, -g2},
                 {1, 0, 0, 2 * g1}, {1, 0, -1, g2}, {1, 0, 1, g2}});
      break;
    case PhaseName::III:
      put(g, x, {{0, 1, 0, g1}, {0, 1, -2, g1}, {0, 1, -1, 2 * g2},
                 {1, 0, 0, -g1}, {1, 0, 2, -g1}, {1, 0, 1, -2 * g2}});
      break;
    case PhaseName::IV:
      put(g, x, {{0, 1, 0, g1}, {0, 1, 2, g1}, {0, 1, 1, 2 * g2},
                 {1, 0, 0, -g1}, {1, 0, -2, -g1}, {1, 0, -1, -2 * g2}});
      break;
    default:
      throw DomainError("split-step generator needs phase I, II, III or IV");
  }
}

void require_seam_window(const LatticeSpec& lat) {
  lat.validate();
  if (lat.x_min > -8 || lat.x_max < 8) throw DomainError("boundary generator needs the lattice to span [-8, 8]");
}

}  // namespace

Generator bulk_generator_simple(SimplePhase phase, double gamma, const LatticeSpec& lattice) {
  Generator g(lattice, kGeneratorHalfWidth);
  for (int x = lattice.x_min; x <= lattice.x_max; ++x) rows_simple(g, x, phase, gamma);
  return g;
}

Generator bulk_generator_split(PhaseName phase, double gamma1, double gamma2,
                               const LatticeSpec& lattice) {
  Generator g(lattice, kGeneratorHalfWidth);
  for (int x = lattice.x_min; x <= lattice.x_max; ++x) rows_split(g, x, phase, gamma1, gamma2);
  return g;
}

// theta > 0 bulk for x >= 2, theta < 0 bulk for x <= -3. This is the side
// assignment under which the four-step discrete blocks reproduce the seam
// rows below (and the zero rows at Psi0(0), Psi0(-1)).
Generator boundary_generator_simple(double gm, const LatticeSpec& lattice) {
  require_seam_window(lattice);
  Generator g(lattice, kGeneratorHalfWidth);
  for (int x = lattice.x_min; x <= lattice.x_max; ++x) {
    if (x >= 2) rows_simple(g, x, SimplePhase::theta_positive, gm);
    else if (x <= -3) rows_simple(g, x, SimplePhase::theta_negative, gm);
  }
  put(g, 1, {{0, 1, 0, gm}, {1, 0, 0, -gm}, {1, 0, 2, gm}});
  put(g, 0, {{1, 0, 2, gm}});
  put(g, -1, {{1, 0, -2, gm}});
  put(g, -2, {{0, 1, 0, gm}, {1, 0, 0, -gm}, {1, 0, -2, gm}});
  return g;
}

Generator boundary_generator_split(BoundaryPair pair, double g1, double g2,
                                   const LatticeSpec& lattice) {
  require_seam_window(lattice);
  Generator g(lattice, kGeneratorHalfWidth);
  if (pair == BoundaryPair::III_IV) {
    // Phase III on x >= 2, phase IV on x <= -3. The printed text assigns the
    // sides the other way round in one sentence, but only this choice agrees
    // with the seam rows and with the discrete walk.
    for (int x = lattice.x_min; x <= lattice.x_max; ++x) {
      if (x >= 2) rows_split(g, x, PhaseName::III, g1, g2);
      else if (x <= -3) rows_split(g, x, PhaseName::IV, g1, g2);
    }
    put(g, 1, {{0, 1, 0, g1}, {0, 1, -1, 2 * g2},
               {1, 0, 0, -g1}, {1, 0, 2, -g1}, {1, 0, 1, -2 * g2}});
    put(g, 0, {{1, 0, 2, -g1}, {1, 0, 1, -2 * g2}});
    put(g, -1, {{1, 0, -2, -g1}, {1, 0, -1, -2 * g2}});
    put(g, -2, {{0, 1, 0, g1}, {0, 1, 1, 2 * g2},
                {1, 0, 0, -g1}, {1, 0, -2, -g1}, {1, 0, -1, -2 * g2}});
  } else {
    // Phase I on x >= 1, phase III on x <= -3.
    for (int x = lattice.x_min; x <= lattice.x_max; ++x) {
      if (x >= 1) rows_split(g, x, PhaseName::I, g1, g2);
      else if (x <= -3) rows_split(g, x, PhaseName::III, g1, g2);
    }
    // Rows at x = 0 as printed. The discrete four-step limit adds on-site
    // terms -2 g1 Psi1(0) and +2 g1 Psi0(0) here (see the oracle tests).
    put(g, 0, {{0, 1, 1, -g2}, {1, 0, 1, g2}});
    put(g, -1, {{0, 1, -2, g1}, {0, 1, -1, 2 * g2}});
    put(g, -2, {{0, 1, -2, g1}, {0, 1, 0, g1}, {0, 1, -1, 2 * g2},
                {1, 0, 0, -g1}, {1, 0, 1, -2 * g2}});
  }
  return g;
}

Eigen::MatrixXd generator_to_dense(const Generator& g) {
  const auto& lat = g.lattice();
  const auto n = static_cast<Eigen::Index>(lat.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int x = lat.x_min; x <= lat.x_max; ++x)
    for (int t = 0; t < 2; ++t)
      for (const auto& term : g.row_terms(x, t)) {
        int y = x + term.offset;
        if (!lat.contains(y)) {
          if (lat.boundary == Boundary::open) continue;
          y = lat.wrap(y);
        }
        m(static_cast<Eigen::Index>(2 * lat.index(x)) + t,
          static_cast<Eigen::Index>(2 * lat.index(y)) + term.source) += term.coef;
      }
  return m;
}

double anti_hermitian_defect(const Generator& g) {
  const auto& lat = g.lattice();
  const int w = g.half_width();
  double worst = 0.0;
  for (int x = lat.x_min; x <= lat.x_max; ++x)
    for (int t = 0; t < 2; ++t)
      for (int s = 0; s < 2; ++s)
        for (int d = -w; d <= w; ++d) {
          int y = x + d;
          if (!lat.contains(y)) {
            if (lat.boundary == Boundary::open) continue;
            y = lat.wrap(y);
          }
          const double c = g.get(x, t, s, d);
          const double mirror = g.get(y, s, t, -d);
          worst = std::max(worst, std::abs(c + mirror));
        }
  return worst;
}

}  // namespace topowalk
