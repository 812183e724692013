#include "wallcross/localization.hpp"

#include "wallcross/errors.hpp"

#include <algorithm>

namespace wallcross {

LinearForm LinearForm::lambda(int m, int i) {
    LinearForm f(m);
    f.coeffs.at(i) = 1;
    return f;
}

bool LinearForm::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& q) { return q == 0; });
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
    LinearForm out = *this;
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] += o.coeffs.at(i);
    return out;
}

LinearForm LinearForm::operator-(const LinearForm& o) const { return *this + (-o); }

LinearForm LinearForm::operator-() const { return *this * Rat(-1); }

LinearForm LinearForm::operator*(const Rat& s) const {
    LinearForm out = *this;
    for (auto& c : out.coeffs) c *= s;
    return out;
}

cplx LinearForm::eval(const std::vector<cplx>& lambda) const {
    cplx out = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) out += to_double(coeffs[i]) * lambda.at(i);
    return out;
}

std::string LinearForm::str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Rat& c = coeffs[i];
        if (c == 0) continue;
        if (c > 0 && !out.empty()) out += "+";
        if (c == -1)
            out += "-";
        else if (c != 1)
            out += to_string(c);
        out += "λ" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
}

std::vector<LinearForm> restrict_u(const GITData& git, const Anticone& delta) {
    const auto D = git.Drat();
    std::vector<LinearForm> out;
    for (int j = 0; j < git.m; ++j) {
        LinearForm u = LinearForm::lambda(git.m, j);
        auto c = express_in_anticone_basis(D, delta, j);
        for (std::size_t a = 0; a < delta.size(); ++a) u.coeffs[delta[a]] -= c[a];
        out.push_back(u);
    }
    return out;
}

LinearForm theta_restrict(const GITData& git, const Anticone& delta, const RatVec& p) {
    std::vector<RatVec> cols;
    for (int i : delta) cols.push_back(to_rat(git.D[i]));
    auto c = solve_columns(cols, p);
    if (!c) throw SingularBasis("anticone " + to_string(delta) + " is not a basis");
    LinearForm out(git.m);
    for (std::size_t a = 0; a < delta.size(); ++a) out.coeffs[delta[a]] = -(*c)[a];
    return out;
}

namespace {

int outgoing_index(const Anticone& from, const Anticone& to) {
    for (int j : from)
        if (!std::binary_search(to.begin(), to.end(), j)) return j;
    return -1;
}

}  // namespace

bool verify_weight_transition(const WallCrossing& wc, const Anticone& delta_plus, const Anticone& delta_minus, int j) {
    if (!anticones_next_to(wc, delta_plus, delta_minus))
        throw NotAdjacentAnticones(to_string(delta_plus) + " is not next to " + to_string(delta_minus));
    const int jm = outgoing_index(delta_minus, delta_plus);
    const auto up = restrict_u(wc.git, delta_plus);
    const auto um = restrict_u(wc.git, delta_minus);
    const Rat ratio = Rat(wc.De(j)) / Rat(wc.De(jm));
    return up.at(j) == um.at(j) + up[jm] * ratio;
}

SigmaRestriction sigma_restrict(const WallCrossing& wc, const CoordinateChange& cc, const Anticone& delta, int side) {
    const auto& git = wc.git;
    if (!wc.anticones(side).contains(delta)) throw PreconditionFailed(to_string(delta) + " is not an anticone on that side");
    SigmaRestriction s;
    for (const auto& p : side > 0 ? cc.basis_plus : cc.basis_minus)
        s.log_y.push_back(theta_restrict(git, delta, to_rat(p)));
    for (int k = 0; k < git.r; ++k) {
        RatVec unit(git.r, Rat(0));
        unit[k] = 1;
        s.lattice.push_back(theta_restrict(git, delta, unit));
    }
    s.c0 = LinearForm(git.m);
    for (int i = 0; i < git.m; ++i) s.c0.coeffs[i] = 1;
    return s;
}

bool verify_sigma_transition(const WallCrossing& wc, const CoordinateChange& cc, const Anticone& delta_plus,
                             const Anticone& delta_minus) {
    const auto sp = sigma_restrict(wc, cc, delta_plus, +1);
    const auto sm = sigma_restrict(wc, cc, delta_minus, -1);
    if (!(sp.c0 == sm.c0)) return false;
    if (delta_plus == delta_minus) return sp.lattice == sm.lattice;
    if (!anticones_next_to(wc, delta_plus, delta_minus))
        throw NotAdjacentAnticones(to_string(delta_plus) + " is not next to " + to_string(delta_minus));
    const int jm = outgoing_index(delta_minus, delta_plus);
    const LinearForm step = restrict_u(wc.git, delta_plus)[jm] * (Rat(1) / Rat(wc.De(jm)));
    for (int k = 0; k < wc.git.r; ++k)
        if (!(sp.lattice[k] - sm.lattice[k] == step * Rat(wc.e[k]))) return false;
    return true;
}

NormalWeights normal_weights(const GITData& git, const FixedPointLabel& label) {
    NormalWeights out;
    out.label = label;
    const auto u = restrict_u(git, label.delta);
    for (int j = 0; j < git.m; ++j) {
        if (std::binary_search(label.delta.begin(), label.delta.end(), j)) continue;
        Rat p = git.pair(j, label.f.f);
        if (is_integer(p))
            out.fixed.emplace_back(j, u[j]);
        else
            out.moving.push_back({j, u[j], frac(p)});
    }
    return out;
}

}  // namespace wallcross
