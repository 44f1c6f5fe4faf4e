#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ugap/errors.hpp"
#include "ugap/history.hpp"

namespace ugap::history {

namespace {

int find_root(std::vector<int>& parent, int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
    }
    return x;
}

double lowest(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

}  // namespace

void TransitionSystem::validate() const {
    const int n_clock = static_cast<int>(clock.size());
    if (n_clock < 1) throw StructuralError("transition system has no clock states");
    if (n_qubits < 0 || n_qubits > 10) throw StructuralError("register size out of range");
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    std::set<std::pair<int, int>> pairs;
    for (const auto& r : rules) {
        if (r.from < 0 || r.to < 0 || r.from >= n_clock || r.to >= n_clock)
            throw StructuralError("transition references an unknown clock state");
        if (r.from == r.to) throw StructuralError("transition must connect two distinct clock states");
        if (!pairs.emplace(std::min(r.from, r.to), std::max(r.from, r.to)).second)
            throw StructuralError("more than one transition between the same clock pair");
        if (r.unitary.rows() != dim || r.unitary.cols() != dim)
            throw StructuralError("transition unitary has the wrong size");
        if ((r.unitary.adjoint() * r.unitary - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10)
            throw StructuralError("transition operator is not unitary");
    }
    for (int s : illegal)
        if (s < 0 || s >= n_clock) throw StructuralError("illegal state out of range");
    for (const auto& [s, p] : penalties) {
        if (s < 0 || s >= n_clock) throw StructuralError("penalty clock state out of range");
        if (p.rows() != dim || p.cols() != dim) throw StructuralError("penalty has the wrong size");
        if ((p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-12 || lowest(p) < -1e-12)
            throw StructuralError("penalty term must be positive semidefinite");
    }
}

TransitionSystem transition_system_from_json(const nlohmann::json& j) {
    try {
        TransitionSystem ts;
        for (const auto& c : j.at("clock")) {
            if (c.is_string()) {
                ts.clock.push_back({c.get<std::string>()});
            } else {
                ts.clock.push_back({c.at("name").get<std::string>(), c.value("left_bracket", false),
                                    c.value("right_bracket", false)});
            }
        }
        ts.n_qubits = j.value("n", 0);
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << ts.n_qubits);
        auto read_matrix = [&](const nlohmann::json& m) {
            Matrix out(dim, dim);
            for (Eigen::Index r = 0; r < dim; ++r)
                for (Eigen::Index c = 0; c < dim; ++c) {
                    const auto& z = m.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c));
                    out(r, c) = z.is_array() ? cplx(z.at(0).get<double>(), z.at(1).get<double>()) : cplx(z.get<double>());
                }
            return out;
        };
        for (const auto& r : j.value("rules", nlohmann::json::array()))
            ts.rules.push_back({r.at("from").get<int>(), r.at("to").get<int>(),
                                r.contains("unitary") ? read_matrix(r.at("unitary")) : Matrix::Identity(dim, dim)});
        for (int s : j.value("illegal", std::vector<int>{})) ts.illegal.insert(s);
        for (const auto& p : j.value("penalties", nlohmann::json::array()))
            ts.penalties.emplace_back(p.at("clock").get<int>(), read_matrix(p.at("projector")));
        ts.validate();
        return ts;
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(std::string("malformed transition system json: ") + ex.what());
    }
}

HermitianOperator assemble_transition_system(const TransitionSystem& ts) {
    ts.validate();
    const std::int64_t dim = std::int64_t{1} << ts.n_qubits;
    const auto n_clock = static_cast<std::int64_t>(ts.clock.size());
    std::vector<Entry> e;
    auto block = [&](std::int64_t rb, std::int64_t cb, const Matrix& m, cplx scale) {
        for (std::int64_t i = 0; i < dim; ++i)
            for (std::int64_t j = 0; j < dim; ++j)
                if (m(i, j) != cplx{}) e.push_back({rb * dim + i, cb * dim + j, scale * m(i, j)});
    };
    const Matrix id = Matrix::Identity(dim, dim);
    for (const auto& r : ts.rules) {
        block(r.from, r.from, id, 0.5);
        block(r.to, r.to, id, 0.5);
        block(r.to, r.from, r.unitary, -0.5);
        block(r.from, r.to, r.unitary.adjoint(), -0.5);
    }
    for (int s : ts.illegal) block(s, s, id, 1.0);
    for (const auto& [s, p] : ts.penalties) block(s, s, p, 1.0);
    return HermitianOperator(n_clock * dim, std::move(e), "standard form");
}

PartitionReport standard_form_partition(const TransitionSystem& ts) {
    ts.validate();
    const int n_clock = static_cast<int>(ts.clock.size());
    std::vector<int> parent(static_cast<std::size_t>(n_clock));
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& r : ts.rules) parent[static_cast<std::size_t>(find_root(parent, r.from))] = find_root(parent, r.to);

    std::map<int, std::vector<int>> groups;
    for (int s = 0; s < n_clock; ++s) groups[find_root(parent, s)].push_back(s);
    PartitionReport rep;
    for (auto& [_, members] : groups) rep.blocks.push_back(std::move(members));
    std::sort(rep.blocks.begin(), rep.blocks.end());

    std::vector<int> block_of(static_cast<std::size_t>(n_clock));
    for (std::size_t b = 0; b < rep.blocks.size(); ++b)
        for (int s : rep.blocks[b]) block_of[static_cast<std::size_t>(s)] = static_cast<int>(b);
    const auto h = assemble_transition_system(ts);
    const std::int64_t dim = std::int64_t{1} << ts.n_qubits;
    for (const auto& en : h.entries())
        if (block_of[static_cast<std::size_t>(en.row / dim)] != block_of[static_cast<std::size_t>(en.col / dim)])
            rep.max_offblock = std::max(rep.max_offblock, std::abs(en.value));
    rep.block_diagonal = rep.max_offblock <= 1e-12;
    return rep;
}

ClairvoyanceResult clairvoyance_classify(const TransitionSystem& ts, const std::vector<int>& subset) {
    const auto rep = standard_form_partition(ts);
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::find(rep.blocks.begin(), rep.blocks.end(), sorted) == rep.blocks.end())
        throw ValidationError("subset is not an element of the invariant partition");

    const auto h = assemble_transition_system(ts).to_dense();
    const Eigen::Index dim = Eigen::Index{1} << ts.n_qubits;
    const auto k = static_cast<Eigen::Index>(sorted.size());
    Matrix restricted(k * dim, k * dim);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
            restricted.block(a * dim, b * dim, dim, dim) = h.block(sorted[static_cast<std::size_t>(a)] * dim,
                                                                   sorted[static_cast<std::size_t>(b)] * dim, dim, dim);
    ClairvoyanceResult out;
    out.lambda_min = lowest(restricted);
    const auto illegal_count =
        std::count_if(sorted.begin(), sorted.end(), [&](int s) { return ts.illegal.count(s) > 0; });
    if (illegal_count == k) {
        out.category = 1;
        out.certified_bound = 1.0;
    } else if (illegal_count > 0) {
        // Path of the same length, propagation normalized as in the assembly,
        // with a single penalty at one end.
        out.category = 2;
        Eigen::MatrixXd cmp = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index i = 0; i + 1 < k; ++i) {
            cmp(i, i) += 0.5;
            cmp(i + 1, i + 1) += 0.5;
            cmp(i, i + 1) = cmp(i + 1, i) = -0.5;
        }
        cmp(k - 1, k - 1) += 1.0;
        out.certified_bound = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(cmp, Eigen::EigenvaluesOnly).eigenvalues()(0);
    } else {
        out.category = 3;
        out.certified_bound = 0.0;
    }
    out.certified = out.lambda_min >= out.certified_bound - 1e-12;
    return out;
}

}  // namespace ugap::history
