#include "dogan/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dogan {

namespace {

constexpr double kProbTol = 1e-9;
constexpr double kPivotTol = 1e-10;

void check_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

PayoffMatrix::PayoffMatrix(Eigen::MatrixXd e) : entries(std::move(e)) {
  if (entries.rows() < 1 || entries.cols() < 1) {
    throw std::invalid_argument("PayoffMatrix: needs at least one row and column");
  }
  check_finite(entries, "PayoffMatrix");
}

MixedStrategy::MixedStrategy(Eigen::VectorXd p) : probs(std::move(p)) {
  if (probs.size() < 1) {
    throw std::invalid_argument("MixedStrategy: empty");
  }
  if ((probs.array() < -kProbTol).any()) {
    throw std::invalid_argument("MixedStrategy: negative probability");
  }
  if (std::abs(probs.sum() - 1.0) > kProbTol) {
    throw std::invalid_argument("MixedStrategy: probabilities must sum to 1");
  }
}

MixedStrategy MixedStrategy::point_mass(int size, int index) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(size);
  p(index) = 1.0;
  return MixedStrategy(std::move(p));
}

MixedStrategy MixedStrategy::uniform(int size) {
  return MixedStrategy(Eigen::VectorXd::Constant(size, 1.0 / size));
}

double expected_utility(const PayoffMatrix& u, const MixedStrategy& sigma_g,
                        const MixedStrategy& sigma_d) {
  if (sigma_g.size() != u.rows() || sigma_d.size() != u.cols()) {
    throw std::invalid_argument("expected_utility: strategy/matrix dimension mismatch");
  }
  return sigma_g.probs.dot(u.entries * sigma_d.probs);
}

namespace {

// Simplex for max 1'w s.t. A w <= 1, w >= 0 with A > 0 elementwise.
// Returns the optimal w, the dual vector y (one per constraint), and the
// objective value. Bland's rule keeps the pivot path deterministic and
// cycle-free.
struct SimplexResult {
  Eigen::VectorXd w;
  Eigen::VectorXd y;
  double objective;
};

SimplexResult simplex_positive(const Eigen::MatrixXd& a) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  // Tableau: n structural columns, m slack columns, rhs.
  Eigen::MatrixXd tab(m + 1, n + m + 1);
  tab.setZero();
  tab.block(0, 0, m, n) = a;
  tab.block(0, n, m, m).setIdentity();
  tab.block(0, n + m, m, 1).setOnes();
  // Cost row holds reduced costs c_j - z_j; maximize while any positive.
  tab.block(m, 0, 1, n).setOnes();

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const int max_pivots = 50 * (n + m) * (n + m) + 1000;
  for (int iter = 0; iter < max_pivots; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (tab(m, j) > kPivotTol) { enter = j; break; }
    }
    if (enter < 0) break;  // optimal

    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (tab(i, enter) > kPivotTol) {
        double ratio = tab(i, n + m) / tab(i, enter);
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) {
      throw std::runtime_error("simplex: unbounded (payoff shift failed)");
    }
    double piv = tab(leave, enter);
    tab.row(leave) /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = tab(i, enter);
      if (f != 0.0) tab.row(i) -= f * tab.row(leave);
    }
    basis[leave] = enter;
  }

  SimplexResult r;
  r.w = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) r.w(basis[i]) = tab(i, n + m);
  }
  // Duals are the negated reduced costs under the slack columns.
  r.y = -tab.block(m, n, 1, m).transpose();
  r.objective = -tab(m, n + m);
  return r;
}

MixedStrategy normalize_strategy(Eigen::VectorXd v) {
  v = v.cwiseMax(0.0);
  double s = v.sum();
  if (s <= 0.0) {
    throw std::runtime_error("solve_zero_sum: degenerate strategy weights");
  }
  return MixedStrategy(v / s);
}

}  // namespace

MetaSolution solve_zero_sum(const PayoffMatrix& u) {
  check_finite(u.entries, "solve_zero_sum");
  // Shift so every entry >= 1; strategies are shift-invariant and the value
  // shifts back exactly.
  const double shift = 1.0 - u.entries.minCoeff();
  Eigen::MatrixXd pos = u.entries.array() + shift;

  SimplexResult r = simplex_positive(pos);
  // objective = 1 / value of the shifted game.
  if (r.objective <= 0.0) {
    throw std::runtime_error("solve_zero_sum: simplex returned non-positive objective");
  }
  MetaSolution sol;
  sol.sigma_d = normalize_strategy(r.w);
  sol.sigma_g = normalize_strategy(r.y);
  sol.value = 1.0 / r.objective - shift;
  return sol;
}

double exploitability(const PayoffMatrix& u, const MixedStrategy& sigma_g,
                      const MixedStrategy& sigma_d, double value) {
  Eigen::VectorXd row_payoffs = u.entries * sigma_d.probs;        // per pure generator
  Eigen::VectorXd col_payoffs = u.entries.transpose() * sigma_g.probs;  // per pure discriminator
  double gen_gain = row_payoffs.maxCoeff() - value;
  double dis_gain = value - col_payoffs.minCoeff();
  return std::max(gen_gain, dis_gain);
}

PayoffMatrix augment(const PayoffMatrix& u, const Eigen::VectorXd& new_row,
                     const Eigen::VectorXd& new_col, double corner) {
  const int m = u.rows();
  const int n = u.cols();
  if (new_row.size() != n || new_col.size() != m) {
    throw std::invalid_argument("augment: row/column length mismatch");
  }
  Eigen::MatrixXd e(m + 1, n + 1);
  e.topLeftCorner(m, n) = u.entries;
  e.block(m, 0, 1, n) = new_row.transpose();
  e.block(0, n, m, 1) = new_col;
  e(m, n) = corner;
  return PayoffMatrix(std::move(e));
}

TerminationResult termination_check(const PayoffMatrix& u,
                                    const MixedStrategy& sigma_g,
                                    const MixedStrategy& sigma_d,
                                    double epsilon) {
  const int m = u.rows();
  const int n = u.cols();
  if (sigma_g.size() != m || sigma_d.size() != n) {
    throw std::invalid_argument("termination_check: dimension mismatch");
  }
  const double v = expected_utility(u, sigma_g, sigma_d);
  const double new_gen_payoff = u.entries.row(m - 1).dot(sigma_d.probs);
  const double new_dis_payoff = sigma_g.probs.dot(u.entries.col(n - 1));
  TerminationResult r;
  r.gen_inc = new_gen_payoff - v;
  r.dis_inc = -new_dis_payoff + v;
  r.terminate = (r.gen_inc < epsilon) && (-r.dis_inc < epsilon);
  return r;
}

namespace {

std::vector<int> survivors(const Eigen::VectorXd& probs, int s) {
  const int count = static_cast<int>(probs.size());
  std::vector<int> kept(count);
  for (int i = 0; i < count; ++i) kept[i] = i;
  if (count <= s) return kept;

  const double min_p = probs.minCoeff();
  const int floor = std::max(2, s - 1);
  std::vector<int> out;
  int remaining = count;
  // Count how many argmin indices we may drop before hitting the floor.
  for (int i = 0; i < count; ++i) {
    bool is_min = probs(i) <= min_p + kProbTol;
    if (is_min && remaining > floor) {
      --remaining;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

PruneResult prune(const PayoffMatrix& u, const MixedStrategy& sigma_g,
                  const MixedStrategy& sigma_d, int s) {
  if (s < 2) {
    throw std::invalid_argument("prune: support limit s must be >= 2");
  }
  if (sigma_g.size() != u.rows() || sigma_d.size() != u.cols()) {
    throw std::invalid_argument("prune: strategy/matrix dimension mismatch");
  }
  PruneResult r;
  r.kept_rows = survivors(sigma_g.probs, s);
  r.kept_cols = survivors(sigma_d.probs, s);
  Eigen::MatrixXd e(r.kept_rows.size(), r.kept_cols.size());
  for (std::size_t i = 0; i < r.kept_rows.size(); ++i) {
    for (std::size_t j = 0; j < r.kept_cols.size(); ++j) {
      e(i, j) = u.entries(r.kept_rows[i], r.kept_cols[j]);
    }
  }
  r.matrix = PayoffMatrix(std::move(e));
  return r;
}

void write_csv(const PayoffMatrix& u, std::ostream& out) {
  for (int j = 0; j < u.cols(); ++j) {
    out << (j ? ",d" : "d") << j;
  }
  out << "\n";
  out.precision(17);
  for (int i = 0; i < u.rows(); ++i) {
    for (int j = 0; j < u.cols(); ++j) {
      if (j) out << ",";
      out << u.entries(i, j);
    }
    out << "\n";
  }
}

PayoffMatrix parse_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      ++col;
      try {
        std::size_t used = 0;
        double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw std::invalid_argument("trailing junk");
        row.push_back(v);
      } catch (const std::exception&) {
        throw std::invalid_argument("matrix csv: bad cell at row " + std::to_string(line_no) +
                                    ", column " + std::to_string(col) + ": '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("matrix csv: ragged row " + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw std::invalid_argument("matrix csv: empty input");
  }
  Eigen::MatrixXd e(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) e(i, j) = rows[i][j];
  }
  return PayoffMatrix(std::move(e));
}

std::string to_json(const MetaSolution& s) {
  nlohmann::json j;
  j["sigma_g"] = std::vector<double>(s.sigma_g.probs.data(),
                                     s.sigma_g.probs.data() + s.sigma_g.size());
  j["sigma_d"] = std::vector<double>(s.sigma_d.probs.data(),
                                     s.sigma_d.probs.data() + s.sigma_d.size());
  j["value"] = s.value;
  return j.dump();
}

}  // namespace dogan
