#include <cmath>
#include <numbers>
#include <set>

#include "ugap/errors.hpp"
#include "ugap/history.hpp"

namespace ugap::history {

namespace {

double param(const Gate& g) {
    if (g.params.size() != 1) throw ValidationError("gate " + g.name + " takes exactly one parameter");
    return g.params[0];
}

}  // namespace

Matrix Gate::local_matrix() const {
    Matrix m(2, 2);
    const double r = 1 / std::numbers::sqrt2;
    const cplx i1(0, 1);
    if (name == "I") m << 1, 0, 0, 1;
    else if (name == "X") m << 0, 1, 1, 0;
    else if (name == "Y") m << 0, -i1, i1, 0;
    else if (name == "Z") m << 1, 0, 0, -1;
    else if (name == "H") m << r, r, r, -r;
    else if (name == "S") m << 1, 0, 0, i1;
    else if (name == "T") m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
    else if (name == "RY") {
        const double th = param(*this);
        m << std::cos(th / 2), -std::sin(th / 2), std::sin(th / 2), std::cos(th / 2);
    } else if (name == "ROT") {
        const double th = param(*this);
        m << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    } else if (name == "RZ") {
        const double th = param(*this);
        m << std::polar(1.0, -th / 2), 0, 0, std::polar(1.0, th / 2);
    } else if (name == "PHASE") {
        m << 1, 0, 0, std::polar(1.0, param(*this));
    } else {
        throw ValidationError("unknown gate '" + name + "'");
    }
    return m;
}

void CircuitSpec::validate() const {
    if (n_qubits < 1) throw ValidationError("circuit needs at least one qubit");
    if (gates.empty()) throw ValidationError("circuit needs at least one gate");
    for (const auto& g : gates) {
        if (g.targets.size() != 1) throw ValidationError("gates act on exactly one target qubit");
        if (g.controls.size() > 1) throw ValidationError("gates take at most one control");
        std::set<int> used;
        for (int q : g.targets) used.insert(q);
        for (int q : g.controls) used.insert(q);
        if (used.size() != g.targets.size() + g.controls.size()) throw ValidationError("gate qubits must be distinct");
        for (int q : used)
            if (q < 0 || q >= n_qubits) throw ValidationError("gate placement outside the register");
        (void)g.local_matrix();
    }
}

Matrix CircuitSpec::step_unitary(int step) const {
    const auto& g = gates.at(static_cast<std::size_t>(step));
    const Matrix u = g.local_matrix();
    const kernels::Gate2 gate{u(0, 0), u(0, 1), u(1, 0), u(1, 1)};
    std::uint64_t mask = 0;
    for (int c : g.controls) mask |= std::uint64_t{1} << (n_qubits - 1 - c);
    const std::size_t dim = std::size_t{1} << n_qubits;
    Matrix full(dim, dim);
    std::vector<cplx> col(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::fill(col.begin(), col.end(), cplx{});
        col[j] = 1.0;
        kernels::apply_gate_serial(col, n_qubits, g.targets[0], gate, mask);
        for (std::size_t i = 0; i < dim; ++i) full(i, j) = col[i];
    }
    return full;
}

CircuitSpec circuit_from_json(const nlohmann::json& j) {
    try {
        CircuitSpec c;
        c.n_qubits = j.at("n").get<int>();
        for (const auto& g : j.at("gates")) {
            Gate gate;
            gate.name = g.at("name").get<std::string>();
            gate.targets = g.at("targets").get<std::vector<int>>();
            gate.controls = g.value("controls", std::vector<int>{});
            gate.params = g.value("params", std::vector<double>{});
            c.gates.push_back(std::move(gate));
        }
        c.validate();
        return c;
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError(std::string("malformed circuit json: ") + ex.what());
    }
}

}  // namespace ugap::history
