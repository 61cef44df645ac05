#include "lcqp/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lcqp/errors.hpp"

namespace lcqp
{

using nlohmann::json;

namespace
{

double finite_number(const json& j, const char* what)
{
    if (!j.is_number())
        throw ParseError(std::string(what) + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ValidationError(std::string(what) + ": non-finite entry");
    return v;
}

std::vector<double> number_list(const json& j, const char* what)
{
    if (!j.is_array())
        throw ParseError(std::string(what) + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& x : j)
        out.push_back(finite_number(x, what));
    return out;
}

} // namespace

std::string instance_to_json(const ChainProblem& problem)
{
    json j;
    j["kind"] = std::string(to_string(problem.kind()));
    j["n"] = problem.size();
    j["dims"] = problem.dims();

    json local = json::array();
    for (int i = 0; i < problem.size(); ++i) {
        const auto& l = problem.local(i);
        local.push_back(std::vector<double>(l.data(), l.data() + l.size()));
    }
    j["local"] = std::move(local);

    json inter = json::array();
    for (int i = 0; i + 1 < problem.size(); ++i) {
        const auto& m = problem.interaction(i);
        json rows = json::array();
        for (Eigen::Index u = 0; u < m.rows(); ++u) {
            json row = json::array();
            for (Eigen::Index v = 0; v < m.cols(); ++v)
                row.push_back(m(u, v));
            rows.push_back(std::move(row));
        }
        inter.push_back(std::move(rows));
    }
    j["interaction"] = std::move(inter);

    json meta = json::object();
    if (problem.seed()) {
        meta["seed"] = *problem.seed();
        meta["generator"] = "uniform(-1,1)-normalized";
    }
    if (const auto& p = problem.params())
        meta["raw"] = {{"w_diag", p->diag}, {"w_off", p->off}, {"d", p->linear}};
    j["meta"] = std::move(meta);
    return j.dump();
}

ChainProblem instance_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed instance: ") + e.what());
    } catch (const json::out_of_range& e) {
        // a literal such as 1e999 overflows to a non-finite coefficient
        throw ValidationError(std::string("non-finite coefficient: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("instance must be a JSON object");
    for (const char* key : {"kind", "n", "dims", "local", "interaction"})
        if (!j.contains(key))
            throw ParseError(std::string("instance is missing '") + key + "'");
    if (!j["kind"].is_string() || !j["n"].is_number_integer() || !j["dims"].is_array())
        throw ParseError("instance header has wrong types");

    const ProblemKind kind = parse_kind(j["kind"].get<std::string>());
    const int n = j["n"].get<int>();
    std::vector<int> dims;
    for (const auto& d : j["dims"]) {
        if (!d.is_number_integer())
            throw ParseError("dims must be integers");
        dims.push_back(d.get<int>());
    }
    if (static_cast<int>(dims.size()) != n)
        throw ValidationError("dims has " + std::to_string(dims.size()) + " entries, n is " +
                              std::to_string(n));

    const auto& jl = j["local"];
    const auto& ji = j["interaction"];
    if (!jl.is_array() || !ji.is_array())
        throw ParseError("local and interaction must be arrays");
    if (static_cast<int>(jl.size()) != n)
        throw ValidationError("local has wrong number of sites");

    std::vector<Eigen::VectorXd> local;
    for (int i = 0; i < n; ++i) {
        const auto row = number_list(jl[i], "local");
        if (static_cast<int>(row.size()) != dims[i])
            throw ValidationError("local " + std::to_string(i) + " has length " +
                                  std::to_string(row.size()) + ", expected " + std::to_string(dims[i]));
        local.emplace_back(Eigen::Map<const Eigen::VectorXd>(row.data(), dims[i]));
    }

    std::vector<Eigen::MatrixXd> interaction;
    for (std::size_t i = 0; i < ji.size(); ++i) {
        const auto& rows = ji[i];
        if (!rows.is_array())
            throw ParseError("interaction matrices must be nested arrays");
        const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
        Eigen::MatrixXd m(rows.size(), ncols);
        for (std::size_t u = 0; u < rows.size(); ++u) {
            const auto row = number_list(rows[u], "interaction");
            if (row.size() != ncols)
                throw ValidationError("interaction " + std::to_string(i) + " is ragged");
            for (std::size_t v = 0; v < ncols; ++v)
                m(u, v) = row[v];
        }
        interaction.push_back(std::move(m));
    }

    ChainProblem problem = [&] {
        const json* raw = nullptr;
        if (j.contains("meta") && j["meta"].is_object() && j["meta"].contains("raw"))
            raw = &j["meta"]["raw"];
        if (raw && kind != ProblemKind::TensorQudo) {
            QuadraticParams params;
            params.diag = number_list(raw->value("w_diag", json::array()), "w_diag");
            params.off = number_list(raw->value("w_off", json::array()), "w_off");
            params.linear = number_list(raw->value("d", json::array()), "d");
            ChainProblem q = ChainProblem::quadratic(kind, dims, std::move(params));
            // the tables are authoritative; raw parameters must reproduce them
            ChainProblem t = ChainProblem::from_tables(kind, std::move(local), std::move(interaction));
            if (!(q == t))
                throw ValidationError("meta.raw does not reproduce the local/interaction tables");
            return q;
        }
        return ChainProblem::from_tables(kind, std::move(local), std::move(interaction));
    }();

    if (j.contains("meta") && j["meta"].is_object() && j["meta"].contains("seed") &&
        j["meta"]["seed"].is_number_unsigned())
        problem.set_seed(j["meta"]["seed"].get<std::uint64_t>());
    return problem;
}

void write_instance(const ChainProblem& problem, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot open '" + path.string() + "' for writing");
    out << instance_to_json(problem) << '\n';
    if (!out)
        throw Error("failed writing '" + path.string() + "'");
}

ChainProblem read_instance(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

} // namespace lcqp
