#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lcqp
{

enum class ProblemKind
{
    Qubo,
    Qudo,
    TensorQudo
};

std::string_view to_string(ProblemKind kind);
ProblemKind parse_kind(std::string_view text);

// One value per variable, values[i] in [0, dims[i]).
using Assignment = std::vector<int>;

// Tridiagonal quadratic parameterization of a QUBO/QUDO chain:
//   C(x) = sum_i (diag[i] x_i^2 + linear[i] x_i) + sum_i off[i] x_i x_{i+1}
struct QuadraticParams
{
    std::vector<double> diag;
    std::vector<double> off;
    std::vector<double> linear;
};

// Linear-chain instance with per-site and nearest-neighbour cost tables.
//
// local(n)[v] is the cost contribution of x_n = v, interaction(n)(u, v) the
// cost of (x_n = u, x_{n+1} = v). QUBO and QUDO instances keep their
// quadratic parameters alongside the tables so they can be re-expanded or
// serialized in raw form.
class ChainProblem
{
  public:
    static ChainProblem from_tables(ProblemKind kind, std::vector<Eigen::VectorXd> local,
                                    std::vector<Eigen::MatrixXd> interaction);

    static ChainProblem quadratic(ProblemKind kind, std::vector<int> dims, QuadraticParams params);

    ProblemKind kind() const { return kind_; }
    int size() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    int dim(int n) const { return dims_[static_cast<std::size_t>(n)]; }
    int max_dim() const;

    const Eigen::VectorXd& local(int n) const { return local_[static_cast<std::size_t>(n)]; }
    const Eigen::MatrixXd& interaction(int n) const
    {
        return interaction_[static_cast<std::size_t>(n)];
    }
    const std::optional<QuadraticParams>& params() const { return params_; }

    std::optional<std::uint64_t> seed() const { return seed_; }
    void set_seed(std::uint64_t seed) { seed_ = seed; }

    // Every cost entry multiplied by c.
    ChainProblem scaled(double c) const;

    // Same tables, kind TensorQudo, quadratic parameters dropped.
    ChainProblem as_tensor_qudo() const;

    // log of prod_{j >= first} dims[j].
    double log_completions(int first) const;

    bool operator==(const ChainProblem& other) const;

  private:
    ChainProblem() = default;
    void validate() const;

    ProblemKind kind_ = ProblemKind::TensorQudo;
    std::vector<int> dims_;
    std::vector<Eigen::VectorXd> local_;
    std::vector<Eigen::MatrixXd> interaction_;
    std::optional<QuadraticParams> params_;
    std::optional<std::uint64_t> seed_;
};

struct Diagnostics
{
    // log-magnitudes of each extracted trace vector, in extraction order
    std::vector<std::vector<double>> trace_log_magnitudes;
    // natural log of every normalization factor applied, in order
    std::vector<double> normalization_trail;
    std::uint64_t op_count = 0;
};

struct Solution
{
    Assignment assignment;
    double cost = 0.0;
    Diagnostics diagnostics;
};

void validate_assignment(const ChainProblem& problem, std::span<const int> x);

// Summed left to right as local[0] + (interaction[0] + local[1]) + ... so
// that every caller reproduces the same rounding.
double evaluate_cost(const ChainProblem& problem, std::span<const int> x);

Solution make_solution(const ChainProblem& problem, Assignment x, Diagnostics diagnostics = {});

// Uniform (-1, 1) draws, normalized per coefficient object (w, d, or the
// tensor) by the 2-norm of its flattened entries.
ChainProblem generate_random(ProblemKind kind, std::span<const int> dims, std::uint64_t seed);
ChainProblem generate_random(ProblemKind kind, int n, int d, std::uint64_t seed);

// Dense general quadratic form over binary variables:
//   C(s) = s^T Q s + offset, Q upper triangular (diagonal holds linear terms).
struct DenseQubo
{
    Eigen::MatrixXd q;
    double offset = 0.0;

    double evaluate(std::span<const int> bits) const;
};

struct BinarizedQudo
{
    DenseQubo qubo;
    // bit_index[i][k] is the position of s_{i,k} (weight 2^k) in the qubo
    std::vector<std::vector<int>> bit_index;

    Assignment decode(std::span<const int> bits) const;
    std::vector<int> encode(std::span<const int> x) const;
};

BinarizedQudo binarize_qudo(const ChainProblem& problem);

} // namespace lcqp
