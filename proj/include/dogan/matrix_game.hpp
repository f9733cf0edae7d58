#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

namespace dogan {

// Dense payoff matrix of the restricted meta-game. Rows index generator
// strategies, columns index discriminator strategies. Entry (i,j) is the
// generator player's payoff; the discriminator's payoff is its negation.
struct PayoffMatrix {
  Eigen::MatrixXd entries;

  PayoffMatrix() = default;
  explicit PayoffMatrix(Eigen::MatrixXd e);

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
  double operator()(int i, int j) const { return entries(i, j); }
};

// Probability vector over one player's support set.
struct MixedStrategy {
  Eigen::VectorXd probs;

  MixedStrategy() = default;
  explicit MixedStrategy(Eigen::VectorXd p);
  static MixedStrategy point_mass(int size, int index);
  static MixedStrategy uniform(int size);

  int size() const { return static_cast<int>(probs.size()); }
  double operator()(int i) const { return probs(i); }
};

struct MetaSolution {
  MixedStrategy sigma_g;
  MixedStrategy sigma_d;
  double value = 0.0;
};

// Bilinear expected utility sigma_g' U sigma_d for the generator player.
double expected_utility(const PayoffMatrix& u, const MixedStrategy& sigma_g,
                        const MixedStrategy& sigma_d);

// Exact mixed NE of the zero-sum game via the minimax LP (simplex with a
// positivity shift and Bland's pivot rule).
MetaSolution solve_zero_sum(const PayoffMatrix& u);

// max over pure deviations of either player's gain against the profile,
// relative to `value`. Zero at an exact equilibrium.
double exploitability(const PayoffMatrix& u, const MixedStrategy& sigma_g,
                      const MixedStrategy& sigma_d, double value);

// Adds one generator row and one discriminator column. new_row is the new
// generator's payoff vs each existing discriminator (length cols), new_col
// the existing generators vs the new discriminator (length rows), corner
// the new-vs-new entry.
PayoffMatrix augment(const PayoffMatrix& u, const Eigen::VectorXd& new_row,
                     const Eigen::VectorXd& new_col, double corner);

// Termination rule over the newest best responses (last row / last column):
// genInc = U(G[m], sigma_d) - v, disInc = -U(sigma_g, D[n]) + v; terminate
// when genInc < eps and -disInc < eps.
struct TerminationResult {
  bool terminate = false;
  double gen_inc = 0.0;
  double dis_inc = 0.0;
};
TerminationResult termination_check(const PayoffMatrix& u,
                                    const MixedStrategy& sigma_g,
                                    const MixedStrategy& sigma_d,
                                    double epsilon);

struct PruneResult {
  PayoffMatrix matrix;
  std::vector<int> kept_rows;
  std::vector<int> kept_cols;
};

// Removes minimum-probability rows (when rows > s) and columns (when
// cols > s), oldest first among ties, never dropping the survivor count
// below max(2, s-1).
PruneResult prune(const PayoffMatrix& u, const MixedStrategy& sigma_g,
                  const MixedStrategy& sigma_d, int s);

// CSV (header row of column strategy ids) for debugging dumps.
void write_csv(const PayoffMatrix& u, std::ostream& out);

// Plain numeric grid, no header. Throws with row/column diagnostics on a
// malformed cell.
PayoffMatrix parse_matrix_csv(std::istream& in);

std::string to_json(const MetaSolution& s);

}  // namespace dogan
