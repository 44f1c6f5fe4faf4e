#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "ugap/errors.hpp"
#include "ugap/qpe.hpp"

namespace ugap::qpe {

namespace {

using Mat2 = Eigen::Matrix2cd;

constexpr int kNetWordLength = 12;

Mat2 to_mat(const Gate2& g) {
    Mat2 m;
    m << g[0], g[1], g[2], g[3];
    return m;
}

Gate2 to_gate(const Mat2& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

Mat2 letter(char c) {
    const double r = (1 / std::numbers::sqrt2);
    const cplx w = std::polar(1.0, std::numbers::pi / 4);
    Mat2 m;
    switch (c) {
        case 'H': m << r, r, r, -r; break;
        case 'T': m << 1, 0, 0, w; break;
        case 't': m << 1, 0, 0, std::conj(w); break;
        case 'S': m << 1, 0, 0, cplx(0, 1); break;
        case 's': m << 1, 0, 0, cplx(0, -1); break;
        case 'X': m << 0, 1, 1, 0; break;
        default: throw ValidationError(std::string("unknown gate letter '") + c + "'");
    }
    return m;
}

// Word "AB" means apply A first, so the product is B * A.
Mat2 product_of(const std::string& word) {
    Mat2 m = Mat2::Identity();
    for (char c : word) m = letter(c) * m;
    return m;
}

Mat2 to_su2(const Mat2& u) { return u / std::sqrt(u.determinant()); }

// Projective closeness: larger is closer.
double trace_overlap(const Mat2& a, const Mat2& b) { return std::abs((a.adjoint() * b).trace()); }

struct NetEntry {
    std::string word;
    Mat2 su2;
};

std::vector<NetEntry> build_net() {
    std::map<std::array<long long, 8>, std::string> seen;
    std::vector<NetEntry> net;
    for (int len = 0; len <= kNetWordLength; ++len) {
        for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            std::string w;
            for (int i = 0; i < len; ++i) w += (bits >> i & 1u) ? 'T' : 'H';
            w = simplify_word(w);
            Mat2 u = to_su2(product_of(w));
            // Fix the +-1 ambiguity so equal rotations share a key.
            for (int k = 0; k < 4; ++k) {
                const cplx z = u(k / 2, k % 2);
                if (std::abs(z) > 1e-9) {
                    if (z.real() < -1e-9 || (std::abs(z.real()) <= 1e-9 && z.imag() < 0)) u = -u;
                    break;
                }
            }
            std::array<long long, 8> key{};
            for (int k = 0; k < 4; ++k) {
                key[2 * k] = std::llround(u(k / 2, k % 2).real() * 1e8);
                key[2 * k + 1] = std::llround(u(k / 2, k % 2).imag() * 1e8);
            }
            if (seen.emplace(key, w).second) net.push_back({w, u});
        }
    }
    return net;
}

const std::vector<NetEntry>& base_net() {
    static const std::vector<NetEntry> net = build_net();
    return net;
}

const NetEntry& nearest(const Mat2& u) {
    const auto& net = base_net();
    std::size_t best = 0;
    double best_overlap = -1;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const double o = trace_overlap(net[i].su2, u);
        if (o > best_overlap + 1e-15) {
            best_overlap = o;
            best = i;
        }
    }
    return net[best];
}

// Bloch form u = cos(a/2) I - i sin(a/2) n.sigma with a in [0, pi] after a sign flip.
void axis_angle(Mat2 u, double& angle, Eigen::Vector3d& axis) {
    if (u.trace().real() < 0) u = -u;
    const double c = std::clamp(u.trace().real() / 2, -1.0, 1.0);
    angle = 2 * std::acos(c);
    const cplx nx = (u(0, 1) + u(1, 0)) / cplx(0, -2);
    const cplx ny = (u(1, 0) - u(0, 1)) / 2.0;
    const cplx nz = (u(0, 0) - u(1, 1)) / cplx(0, -2);
    axis = {nx.real(), ny.real(), nz.real()};
    const double len = axis.norm();
    axis = len > 1e-15 ? Eigen::Vector3d(axis / len) : Eigen::Vector3d(0, 0, 1);
}

Mat2 rotation(double angle, const Eigen::Vector3d& n) {
    Mat2 m;
    const double c = std::cos(angle / 2), s = std::sin(angle / 2);
    m << cplx(c, -s * n.z()), cplx(-s * n.y(), -s * n.x()), cplx(s * n.y(), -s * n.x()), cplx(c, s * n.z());
    return m;
}

// Balanced group commutator: delta = V W V^dag W^dag.
void group_commutator(const Mat2& delta, Mat2& v, Mat2& w) {
    double theta;
    Eigen::Vector3d axis;
    axis_angle(delta, theta, axis);
    const double u = std::sqrt((1 - std::cos(theta / 2)) / 2);
    const double phi = 2 * std::asin(std::sqrt(u));
    const Mat2 vx = rotation(phi, {1, 0, 0}), wy = rotation(phi, {0, 1, 0});
    const Mat2 comm = vx * wy * vx.adjoint() * wy.adjoint();
    double comm_angle;
    Eigen::Vector3d comm_axis;
    axis_angle(comm, comm_angle, comm_axis);
    Eigen::Vector3d k = comm_axis.cross(axis);
    const double dot = std::clamp(comm_axis.dot(axis), -1.0, 1.0);
    Mat2 s = Mat2::Identity();
    if (k.norm() > 1e-12) {
        s = rotation(std::acos(dot), k.normalized());
    } else if (dot < 0) {
        Eigen::Vector3d perp = std::abs(axis.x()) < 0.9 ? Eigen::Vector3d(1, 0, 0) : Eigen::Vector3d(0, 1, 0);
        s = rotation(std::numbers::pi, perp.cross(axis).normalized());
    }
    v = s * vx * s.adjoint();
    w = s * wy * s.adjoint();
}

std::string approximate(const Mat2& u, int depth) {
    if (depth == 0) return nearest(u).word;
    const std::string prev = approximate(u, depth - 1);
    const Mat2 delta = to_su2(u * product_of(prev).adjoint());
    Mat2 v, w;
    group_commutator(delta, v, w);
    const std::string vw = approximate(v, depth - 1), ww = approximate(w, depth - 1);
    // Matrix product V W V^dag W^dag U_prev, so U_prev is applied first.
    return simplify_word(prev + inverse_word(ww) + inverse_word(vw) + ww + vw);
}

std::string exact_phase_word(double theta) {
    const double k = theta / (std::numbers::pi / 4);
    if (std::abs(k - std::round(k)) > 1e-12) return "?";
    const long long steps = ((std::llround(k) % 8) + 8) % 8;
    return simplify_word(std::string(static_cast<std::size_t>(steps), 'T'));
}

}  // namespace

Gate2 word_product(const std::string& word) { return to_gate(product_of(word)); }

std::string inverse_word(const std::string& word) {
    std::string out(word.rbegin(), word.rend());
    for (char& c : out) {
        switch (c) {
            case 'T': c = 't'; break;
            case 't': c = 'T'; break;
            case 'S': c = 's'; break;
            case 's': c = 'S'; break;
            case 'H':
            case 'X': break;
            default: throw ValidationError(std::string("unknown gate letter '") + c + "'");
        }
    }
    return out;
}

std::string simplify_word(std::string word) {
    static const std::vector<std::pair<std::string, std::string>> rules = {
        {"HH", ""}, {"XX", ""}, {"Tt", ""}, {"tT", ""}, {"Ss", ""}, {"sS", ""},
        {"TT", "S"}, {"tt", "s"}, {"Ts", "t"}, {"sT", "t"}, {"tS", "T"}, {"St", "T"},
        {"SSSS", ""}, {"SSS", "s"}, {"sss", "S"}, {"ss", "SS"}};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [from, to] : rules) {
            for (auto pos = word.find(from); pos != std::string::npos; pos = word.find(from)) {
                word.replace(pos, from.size(), to);
                changed = true;
            }
        }
    }
    return word;
}

double phase_invariant_distance(const Gate2& a, const Gate2& b) {
    const Mat2 ma = to_mat(a), mb = to_mat(b);
    const cplx tr = (mb.adjoint() * ma).trace();
    const double phase = std::abs(tr) > 1e-15 ? -std::arg(tr) : 0.0;
    const Mat2 diff = std::polar(1.0, phase) * ma - mb;
    return Eigen::JacobiSVD<Mat2>(diff).singularValues()(0);
}

GateSequence::GateSequence(std::string w, const Gate2& tgt) : word(std::move(w)), target(tgt) {
    const Mat2 p = product_of(word), t = to_mat(target);
    // For 2x2 unitaries the best phase aligns the two eigenvalues of t^dag p
    // symmetrically around 1, which is the phase of their sum.
    const cplx tr = (t.adjoint() * p).trace();
    global_phase = std::abs(tr) > 1e-15 ? -std::arg(tr) : 0.0;
    const Mat2 diff = std::polar(1.0, global_phase) * p - t;
    achieved_error = Eigen::JacobiSVD<Mat2>(diff).singularValues()(0);
}

Gate2 GateSequence::product() const { return word_product(word); }

Gate2 GateSequence::corrected_product() const { return to_gate(std::polar(1.0, global_phase) * product_of(word)); }

GateSequence sk_synthesize(double theta, double epsilon, int depth_budget) {
    if (!(epsilon > 0)) throw ValidationError("epsilon must be positive");
    if (epsilon < 1e-4) throw ValidationError("epsilon below 1e-4 is outside the supported range");
    if (depth_budget < 0) throw ValidationError("depth budget must be nonnegative");
    const Gate2 target = phase_gate(theta);
    if (auto w = exact_phase_word(theta); w != "?") return GateSequence(w, target);

    const Mat2 u = to_su2(to_mat(target));
    GateSequence best;
    best.achieved_error = INFINITY;
    for (int depth = 0; depth <= depth_budget; ++depth) {
        GateSequence seq(approximate(u, depth), target);
        if (seq.achieved_error < best.achieved_error) best = seq;
        if (seq.achieved_error <= epsilon) return seq;
    }
    throw BudgetExhausted<GateSequence>("depth budget " + std::to_string(depth_budget) +
                                            " insufficient; best error " + std::to_string(best.achieved_error),
                                        best);
}

double sk_length_exponent(double theta, const std::vector<double>& epsilons, int depth_budget) {
    std::vector<double> xs, ys;
    for (double eps : epsilons) {
        const auto seq = sk_synthesize(theta, eps, depth_budget);
        if (seq.word.empty()) continue;
        xs.push_back(std::log(std::log(1.0 / eps)));
        ys.push_back(std::log(static_cast<double>(seq.word.size())));
    }
    if (xs.size() < 2) throw ValidationError("need at least two nontrivial words to fit an exponent");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-15) throw ValidationError("degenerate epsilon set for exponent fit");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace ugap::qpe
