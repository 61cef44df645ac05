#include "lcqp/problem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "lcqp/errors.hpp"

namespace lcqp
{

std::string_view to_string(ProblemKind kind)
{
    switch (kind) {
    case ProblemKind::Qubo: return "qubo";
    case ProblemKind::Qudo: return "qudo";
    case ProblemKind::TensorQudo: return "tqudo";
    }
    return "?";
}

ProblemKind parse_kind(std::string_view text)
{
    if (text == "qubo") return ProblemKind::Qubo;
    if (text == "qudo") return ProblemKind::Qudo;
    if (text == "tqudo") return ProblemKind::TensorQudo;
    throw ValidationError("unknown problem kind '" + std::string(text) + "'");
}

ChainProblem ChainProblem::from_tables(ProblemKind kind, std::vector<Eigen::VectorXd> local,
                                       std::vector<Eigen::MatrixXd> interaction)
{
    ChainProblem p;
    p.kind_ = kind;
    p.dims_.reserve(local.size());
    for (const auto& l : local)
        p.dims_.push_back(static_cast<int>(l.size()));
    p.local_ = std::move(local);
    p.interaction_ = std::move(interaction);
    p.validate();
    return p;
}

ChainProblem ChainProblem::quadratic(ProblemKind kind, std::vector<int> dims, QuadraticParams params)
{
    if (kind == ProblemKind::TensorQudo)
        throw ValidationError("quadratic parameters require kind qubo or qudo");
    const std::size_t n = dims.size();
    if (n < 2)
        throw ValidationError("a chain needs at least 2 variables");
    if (params.linear.empty())
        params.linear.assign(n, 0.0);
    if (params.diag.size() != n || params.off.size() != n - 1 || params.linear.size() != n)
        throw ValidationError("quadratic parameter lengths do not match n");

    std::vector<Eigen::VectorXd> local(n);
    std::vector<Eigen::MatrixXd> interaction(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (dims[i] < 2)
            throw ValidationError("every dimension must be at least 2");
        local[i].resize(dims[i]);
        for (int v = 0; v < dims[i]; ++v)
            local[i][v] = params.diag[i] * v * v + params.linear[i] * v;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        interaction[i].resize(dims[i], dims[i + 1]);
        for (int u = 0; u < dims[i]; ++u)
            for (int v = 0; v < dims[i + 1]; ++v)
                interaction[i](u, v) = params.off[i] * u * v;
    }

    ChainProblem p = from_tables(kind, std::move(local), std::move(interaction));
    p.params_ = std::move(params);
    return p;
}

void ChainProblem::validate() const
{
    const std::size_t n = dims_.size();
    if (n < 2)
        throw ValidationError("a chain needs at least 2 variables");
    if (interaction_.size() != n - 1)
        throw ValidationError("expected " + std::to_string(n - 1) + " interaction matrices, got " +
                              std::to_string(interaction_.size()));
    for (std::size_t i = 0; i < n; ++i) {
        if (dims_[i] < 2)
            throw ValidationError("dimension of variable " + std::to_string(i) + " is below 2");
        if (kind_ == ProblemKind::Qubo && dims_[i] != 2)
            throw ValidationError("qubo variables must have dimension 2");
        if (!local_[i].allFinite())
            throw ValidationError("non-finite local cost at variable " + std::to_string(i));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto& m = interaction_[i];
        if (m.rows() != dims_[i] || m.cols() != dims_[i + 1]) {
            std::ostringstream os;
            os << "interaction " << i << " has shape " << m.rows() << "x" << m.cols() << ", expected "
               << dims_[i] << "x" << dims_[i + 1];
            throw ValidationError(os.str());
        }
        if (!m.allFinite())
            throw ValidationError("non-finite interaction cost at link " + std::to_string(i));
    }
}

int ChainProblem::max_dim() const
{
    return *std::max_element(dims_.begin(), dims_.end());
}

ChainProblem ChainProblem::scaled(double c) const
{
    ChainProblem p = *this;
    for (auto& l : p.local_)
        l *= c;
    for (auto& m : p.interaction_)
        m *= c;
    if (p.params_) {
        for (auto* v : {&p.params_->diag, &p.params_->off, &p.params_->linear})
            for (auto& x : *v)
                x *= c;
    }
    p.validate();
    return p;
}

ChainProblem ChainProblem::as_tensor_qudo() const
{
    ChainProblem p = *this;
    p.kind_ = ProblemKind::TensorQudo;
    p.params_.reset();
    return p;
}

double ChainProblem::log_completions(int first) const
{
    double s = 0.0;
    for (int j = std::max(first, 0); j < size(); ++j)
        s += std::log(static_cast<double>(dim(j)));
    return s;
}

bool ChainProblem::operator==(const ChainProblem& other) const
{
    if (kind_ != other.kind_ || dims_ != other.dims_)
        return false;
    for (std::size_t i = 0; i < local_.size(); ++i)
        if (local_[i] != other.local_[i])
            return false;
    for (std::size_t i = 0; i < interaction_.size(); ++i)
        if (interaction_[i] != other.interaction_[i])
            return false;
    return true;
}

void validate_assignment(const ChainProblem& problem, std::span<const int> x)
{
    if (static_cast<int>(x.size()) != problem.size())
        throw ValidationError("assignment has " + std::to_string(x.size()) + " values, problem has " +
                              std::to_string(problem.size()) + " variables");
    for (int i = 0; i < problem.size(); ++i)
        if (x[i] < 0 || x[i] >= problem.dim(i))
            throw ValidationError("value " + std::to_string(x[i]) + " out of range for variable " +
                                  std::to_string(i));
}

double evaluate_cost(const ChainProblem& problem, std::span<const int> x)
{
    validate_assignment(problem, x);
    double c = problem.local(0)[x[0]];
    for (int n = 1; n < problem.size(); ++n) {
        c += problem.interaction(n - 1)(x[n - 1], x[n]);
        c += problem.local(n)[x[n]];
    }
    return c;
}

Solution make_solution(const ChainProblem& problem, Assignment x, Diagnostics diagnostics)
{
    Solution s;
    s.cost = evaluate_cost(problem, x);
    s.assignment = std::move(x);
    s.diagnostics = std::move(diagnostics);
    return s;
}

namespace
{

// Draws in the open interval (-1, 1).
double draw(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    double x;
    do {
        x = uni(rng);
    } while (x == -1.0);
    return x;
}

void normalize(std::vector<double>& a, std::vector<double>* b = nullptr)
{
    double sq = 0.0;
    for (double x : a)
        sq += x * x;
    if (b)
        for (double x : *b)
            sq += x * x;
    const double norm = std::sqrt(sq);
    if (norm == 0.0)
        return;
    for (double& x : a)
        x /= norm;
    if (b)
        for (double& x : *b)
            x /= norm;
}

} // namespace

ChainProblem generate_random(ProblemKind kind, std::span<const int> dims, std::uint64_t seed)
{
    const std::size_t n = dims.size();
    if (n < 2)
        throw ValidationError("n must be at least 2");
    for (int d : dims)
        if (d < 2)
            throw ValidationError("every dimension must be at least 2");

    std::mt19937_64 rng(seed);
    ChainProblem out = [&] {
        if (kind == ProblemKind::TensorQudo) {
            std::vector<double> flat;
            for (std::size_t i = 0; i < n; ++i)
                for (int v = 0; v < dims[i]; ++v)
                    flat.push_back(draw(rng));
            for (std::size_t i = 0; i + 1 < n; ++i)
                for (int u = 0; u < dims[i]; ++u)
                    for (int v = 0; v < dims[i + 1]; ++v)
                        flat.push_back(draw(rng));
            normalize(flat);

            std::vector<Eigen::VectorXd> local(n);
            std::vector<Eigen::MatrixXd> interaction(n - 1);
            std::size_t k = 0;
            for (std::size_t i = 0; i < n; ++i) {
                local[i].resize(dims[i]);
                for (int v = 0; v < dims[i]; ++v)
                    local[i][v] = flat[k++];
            }
            for (std::size_t i = 0; i + 1 < n; ++i) {
                interaction[i].resize(dims[i], dims[i + 1]);
                for (int u = 0; u < dims[i]; ++u)
                    for (int v = 0; v < dims[i + 1]; ++v)
                        interaction[i](u, v) = flat[k++];
            }
            return ChainProblem::from_tables(kind, std::move(local), std::move(interaction));
        }

        if (kind == ProblemKind::Qubo)
            for (int d : dims)
                if (d != 2)
                    throw ValidationError("qubo variables must have dimension 2");

        QuadraticParams params;
        params.diag.resize(n);
        params.off.resize(n - 1);
        for (auto& x : params.diag)
            x = draw(rng);
        for (auto& x : params.off)
            x = draw(rng);
        normalize(params.diag, &params.off);
        params.linear.assign(n, 0.0);
        if (kind == ProblemKind::Qudo) {
            for (auto& x : params.linear)
                x = draw(rng);
            normalize(params.linear);
        }
        return ChainProblem::quadratic(kind, std::vector<int>(dims.begin(), dims.end()),
                                       std::move(params));
    }();
    out.set_seed(seed);
    return out;
}

ChainProblem generate_random(ProblemKind kind, int n, int d, std::uint64_t seed)
{
    if (n < 2)
        throw ValidationError("n must be at least 2");
    const std::vector<int> dims(static_cast<std::size_t>(n), d);
    return generate_random(kind, dims, seed);
}

double DenseQubo::evaluate(std::span<const int> bits) const
{
    double c = offset;
    const auto m = q.rows();
    for (Eigen::Index a = 0; a < m; ++a) {
        if (!bits[a])
            continue;
        for (Eigen::Index b = a; b < m; ++b)
            if (bits[b])
                c += q(a, b);
    }
    return c;
}

Assignment BinarizedQudo::decode(std::span<const int> bits) const
{
    Assignment x(bit_index.size(), 0);
    for (std::size_t i = 0; i < bit_index.size(); ++i)
        for (std::size_t k = 0; k < bit_index[i].size(); ++k)
            x[i] += bits[bit_index[i][k]] << k;
    return x;
}

std::vector<int> BinarizedQudo::encode(std::span<const int> x) const
{
    std::vector<int> bits(static_cast<std::size_t>(qubo.q.rows()), 0);
    for (std::size_t i = 0; i < bit_index.size(); ++i)
        for (std::size_t k = 0; k < bit_index[i].size(); ++k)
            bits[bit_index[i][k]] = (x[i] >> k) & 1;
    return bits;
}

BinarizedQudo binarize_qudo(const ChainProblem& problem)
{
    if (problem.kind() == ProblemKind::TensorQudo)
        throw UnsupportedError("binarization needs a quadratic (qubo/qudo) instance");
    if (!problem.params())
        throw UnsupportedError("instance carries no quadratic parameterization");
    const auto& p = *problem.params();

    BinarizedQudo out;
    int total = 0;
    for (int i = 0; i < problem.size(); ++i) {
        const auto d = static_cast<unsigned>(problem.dim(i));
        if (!std::has_single_bit(d))
            throw UnsupportedError("dimension " + std::to_string(d) + " of variable " +
                                   std::to_string(i) + " is not a power of 2");
        const int bits = std::countr_zero(d);
        std::vector<int> idx(static_cast<std::size_t>(bits));
        for (int k = 0; k < bits; ++k)
            idx[k] = total++;
        out.bit_index.push_back(std::move(idx));
    }

    auto& q = out.qubo.q;
    q = Eigen::MatrixXd::Zero(total, total);
    auto add = [&q](int a, int b, double v) {
        if (a > b)
            std::swap(a, b);
        q(a, b) += v;
    };
    // x = sum_k 2^k s_k, s_k^2 = s_k:
    //   x^2 = sum_k 4^k s_k + sum_{k<l} 2^{k+l+1} s_k s_l
    for (int i = 0; i < problem.size(); ++i) {
        const auto& bi = out.bit_index[i];
        for (std::size_t k = 0; k < bi.size(); ++k) {
            const double wk = std::ldexp(1.0, static_cast<int>(k));
            add(bi[k], bi[k], p.diag[i] * wk * wk + p.linear[i] * wk);
            for (std::size_t l = k + 1; l < bi.size(); ++l)
                add(bi[k], bi[l], p.diag[i] * 2.0 * wk * std::ldexp(1.0, static_cast<int>(l)));
        }
    }
    for (int i = 0; i + 1 < problem.size(); ++i) {
        const auto& a = out.bit_index[i];
        const auto& b = out.bit_index[i + 1];
        for (std::size_t k = 0; k < a.size(); ++k)
            for (std::size_t l = 0; l < b.size(); ++l)
                add(a[k], b[l], p.off[i] * std::ldexp(1.0, static_cast<int>(k + l)));
    }
    return out;
}

} // namespace lcqp
